#include "forge/poly.hpp"

namespace forge {

ZZ content(const Poly<ZZ> &a) {
  ZZ g(0);
  for (const auto &x : a.c) g = gcd(g, x);
  return g;
}

Poly<ZZ> primitive_part(const Poly<ZZ> &a) {
  if (a.is_zero()) return a;
  ZZ g = content(a);
  if (a.lead().sign() < 0) g = -g;
  std::vector<ZZ> v = a.c;
  for (auto &x : v) x = divexact(x, g);
  return Poly<ZZ>(std::move(v));
}

Poly<ZZ> to_ZZ_poly(const Poly<QQ> &a, ZZ &den) {
  den = ZZ(1);
  for (const auto &x : a.c) den = lcm(den, x.den());
  std::vector<ZZ> v;
  v.reserve(a.c.size());
  for (const auto &x : a.c) v.push_back(divexact(den, x.den()) * x.num());
  return Poly<ZZ>(std::move(v));
}

Poly<QQ> to_QQ_poly(const Poly<ZZ> &a) {
  std::vector<QQ> v;
  v.reserve(a.c.size());
  for (const auto &x : a.c) v.push_back(QQ(x));
  return Poly<QQ>(std::move(v));
}

// prem(a, b): pseudo-remainder, lc(b)^(deg a - deg b + 1) * a = q*b + r
static Poly<ZZ> pseudo_rem(const Poly<ZZ> &a, const Poly<ZZ> &b) {
  Poly<ZZ> r = a;
  long db = b.degree();
  const ZZ &lb = b.lead();
  long steps = a.degree() - db + 1;
  while (!r.is_zero() && r.degree() >= db) {
    long k = r.degree() - db;
    ZZ lr = r.lead();
    std::vector<ZZ> v((size_t)r.degree() + 1, ZZ(0));
    for (long i = 0; i <= r.degree(); i++) v[(size_t)i] = r.c[(size_t)i] * lb;
    for (long i = 0; i <= db; i++)
      v[(size_t)(i + k)] = v[(size_t)(i + k)] - lr * b.c[(size_t)i];
    r = Poly<ZZ>(std::move(v));
    steps--;
  }
  // normalize the count of multiplications so the subresultant bookkeeping
  // below sees exactly lc(b)^(d+1) * a mod b
  while (steps-- > 0) {
    std::vector<ZZ> v = r.c;
    for (auto &x : v) x = x * lb;
    r = Poly<ZZ>(std::move(v));
  }
  return r;
}

ZZ resultant(const Poly<ZZ> &a0, const Poly<ZZ> &b0) {
  // subresultant PRS (Cohen, Algorithm 3.3.7)
  if (a0.is_zero() || b0.is_zero()) return ZZ(0);
  Poly<ZZ> a = a0, b = b0;
  ZZ s(1);
  ZZ g(1), h(1);
  int sign = 1;
  if (a.degree() < b.degree()) {
    if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
    std::swap(a, b);
  }
  while (b.degree() > 0) {
    long d = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
    Poly<ZZ> r = pseudo_rem(a, b);
    a = b;
    // divide r by g*h^d
    ZZ div = g * pow(h, (unsigned long)d);
    std::vector<ZZ> v = r.c;
    for (auto &x : v) x = divexact(x, div);
    b = Poly<ZZ>(std::move(v));
    g = a.lead();
    // h = g^d * h^(1-d)
    if (d == 0) {
      // h unchanged
    } else if (d == 1) {
      h = g;
    } else {
      h = divexact(pow(g, (unsigned long)d), pow(h, (unsigned long)(d - 1)));
    }
  }
  if (b.is_zero()) return ZZ(0);
  // b is a constant; res = sign * b^(deg a) / h^(deg a - 1)
  long da = a.degree();
  ZZ num = pow(b.c[0], (unsigned long)da);
  ZZ res = (da >= 1) ? divexact(num, pow(h, (unsigned long)(da - 1))) : num;
  return sign < 0 ? -res : res;
}

ZZ poly_discriminant(const Poly<ZZ> &f) {
  if (f.degree() < 1) throw std::domain_error("discriminant: degree < 1");
  ZZ r = resultant(f, derivative(f));
  long n = f.degree();
  ZZ d = divexact(r, f.lead());
  if (((n * (n - 1)) / 2) % 2 == 1) d = -d;
  return d;
}

} // namespace forge
