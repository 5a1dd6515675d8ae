#ifndef FORGE_POLY_HPP
#define FORGE_POLY_HPP

#include <stdexcept>
#include <vector>

#include "forge/rational.hpp"

// Dense univariate polynomials over an exact coefficient ring T. T must be
// value-semantic with +,-,* and is_zero(); division-dependent routines
// (divrem, gcd) additionally require /. Coefficients are stored low to high
// and kept trimmed, so degree() == coeffs.size()-1 and the zero polynomial
// has an empty coefficient vector (degree -1 by convention).

namespace forge {

template <class T> struct Poly {
  std::vector<T> c;

  Poly() = default;
  explicit Poly(const T &a) {
    if (!a.is_zero()) c = {a};
  }
  explicit Poly(std::vector<T> v) : c(std::move(v)) { trim(); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  long degree() const { return (long)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  const T &lead() const {
    if (c.empty()) throw std::domain_error("Poly: lead of zero");
    return c.back();
  }
  T coeff(long i) const {
    if (i < 0 || i >= (long)c.size()) return T(0);
    return c[i];
  }

  static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
  static Poly xpow(long n) {
    std::vector<T> v((size_t)n + 1, T(0));
    v.back() = T(1);
    return Poly(std::move(v));
  }
};

template <class T> Poly<T> operator-(const Poly<T> &a) {
  std::vector<T> v = a.c;
  for (auto &x : v) x = -x;
  return Poly<T>(std::move(v));
}

template <class T> Poly<T> operator+(const Poly<T> &a, const Poly<T> &b) {
  std::vector<T> v(std::max(a.c.size(), b.c.size()), T(0));
  for (size_t i = 0; i < a.c.size(); i++) v[i] = v[i] + a.c[i];
  for (size_t i = 0; i < b.c.size(); i++) v[i] = v[i] + b.c[i];
  return Poly<T>(std::move(v));
}

template <class T> Poly<T> operator-(const Poly<T> &a, const Poly<T> &b) {
  std::vector<T> v(std::max(a.c.size(), b.c.size()), T(0));
  for (size_t i = 0; i < a.c.size(); i++) v[i] = v[i] + a.c[i];
  for (size_t i = 0; i < b.c.size(); i++) v[i] = v[i] - b.c[i];
  return Poly<T>(std::move(v));
}

template <class T> Poly<T> operator*(const Poly<T> &a, const Poly<T> &b) {
  if (a.is_zero() || b.is_zero()) return Poly<T>();
  std::vector<T> v(a.c.size() + b.c.size() - 1, T(0));
  for (size_t i = 0; i < a.c.size(); i++) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); j++)
      v[i + j] = v[i + j] + a.c[i] * b.c[j];
  }
  return Poly<T>(std::move(v));
}

template <class T> Poly<T> operator*(const Poly<T> &a, const T &s) {
  std::vector<T> v = a.c;
  for (auto &x : v) x = x * s;
  return Poly<T>(std::move(v));
}

template <class T> bool operator==(const Poly<T> &a, const Poly<T> &b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); i++)
    if (!(a.c[i] == b.c[i])) return false;
  return true;
}

// Euclidean division; requires invertible leading coefficient (field T).
template <class T>
void divrem(const Poly<T> &a, const Poly<T> &b, Poly<T> &q, Poly<T> &r) {
  if (b.is_zero()) throw std::domain_error("Poly: division by zero");
  q = Poly<T>();
  r = a;
  long db = b.degree();
  if (a.degree() < db) return;
  std::vector<T> qc((size_t)(a.degree() - db) + 1, T(0));
  T linv = T(1) / b.lead();
  while (!r.is_zero() && r.degree() >= db) {
    long k = r.degree() - db;
    T f = r.lead() * linv;
    qc[(size_t)k] = f;
    for (long i = 0; i <= db; i++)
      r.c[(size_t)(i + k)] = r.c[(size_t)(i + k)] - f * b.c[(size_t)i];
    r.trim();
  }
  q = Poly<T>(std::move(qc));
}

template <class T> Poly<T> operator%(const Poly<T> &a, const Poly<T> &b) {
  Poly<T> q, r;
  divrem(a, b, q, r);
  return r;
}

template <class T> Poly<T> operator/(const Poly<T> &a, const Poly<T> &b) {
  Poly<T> q, r;
  divrem(a, b, q, r);
  return q;
}

// Monic gcd by the Euclidean algorithm (field coefficients).
template <class T> Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    Poly<T> r = a % b;
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = a * (T(1) / a.lead());
  return a;
}

// g = gcd(a,b) = u*a + v*b, g monic
template <class T>
Poly<T> poly_gcdext(const Poly<T> &a, const Poly<T> &b, Poly<T> &u,
                    Poly<T> &v) {
  Poly<T> r0 = a, r1 = b;
  Poly<T> s0(T(1)), s1, t0, t1(T(1));
  while (!r1.is_zero()) {
    Poly<T> q, r;
    divrem(r0, r1, q, r);
    Poly<T> s = s0 - q * s1, t = t0 - q * t1;
    r0 = r1; r1 = r;
    s0 = s1; s1 = s;
    t0 = t1; t1 = t;
  }
  if (!r0.is_zero()) {
    T f = T(1) / r0.lead();
    r0 = r0 * f; s0 = s0 * f; t0 = t0 * f;
  }
  u = s0;
  v = t0;
  return r0;
}

template <class T> Poly<T> derivative(const Poly<T> &a) {
  if (a.degree() <= 0) return Poly<T>();
  std::vector<T> v((size_t)a.degree(), T(0));
  for (long i = 1; i <= a.degree(); i++) {
    T k = T(0);
    for (long j = 0; j < i; j++) k = k + T(1); // works for any ring incl. F_q
    v[(size_t)(i - 1)] = a.c[(size_t)i] * k;
  }
  return Poly<T>(std::move(v));
}

template <class T> T eval(const Poly<T> &a, const T &x) {
  T r(0);
  for (size_t i = a.c.size(); i-- > 0;) r = r * x + a.c[i];
  return r;
}

// Horner evaluation into another ring U via a coefficient conversion functor.
template <class T, class U, class Conv>
U eval_map(const Poly<T> &a, const U &x, Conv conv, const U &zero) {
  U r = zero;
  for (size_t i = a.c.size(); i-- > 0;) r = r * x + conv(a.c[i]);
  return r;
}

// b(x) substituted into a, reduced mod m: a(b) mod m
template <class T>
Poly<T> compose_mod(const Poly<T> &a, const Poly<T> &b, const Poly<T> &m) {
  Poly<T> r;
  for (size_t i = a.c.size(); i-- > 0;) {
    r = (r * b) % m;
    r = r + Poly<T>(a.c[i]);
  }
  return r;
}

// ---- integer-coefficient specifics -----------------------------------------

ZZ content(const Poly<ZZ> &a);
Poly<ZZ> primitive_part(const Poly<ZZ> &a);
Poly<ZZ> to_ZZ_poly(const Poly<QQ> &a, ZZ &den); // den*a, den minimal positive
Poly<QQ> to_QQ_poly(const Poly<ZZ> &a);

// Subresultant polynomial remainder sequence. Controls coefficient growth,
// which naive rational Euclid does not for the degree-14/22 inputs here.
ZZ resultant(const Poly<ZZ> &a, const Poly<ZZ> &b);
ZZ poly_discriminant(const Poly<ZZ> &f);

} // namespace forge

#endif
