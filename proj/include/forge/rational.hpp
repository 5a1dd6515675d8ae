#ifndef FORGE_RATIONAL_HPP
#define FORGE_RATIONAL_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

// Thin value-type wrappers over GMP. gmpxx returns expression templates from
// its operators, which do not survive inside Eigen expressions; these wrappers
// force every operator to return a plain value. ZZ is an arbitrary-precision
// integer, QQ a rational kept in lowest terms with positive denominator
// (mpq_canonicalize maintains exactly that invariant).

namespace forge {

class ZZ {
  mpz_class v_;

public:
  ZZ() : v_(0) {}
  ZZ(int x) : v_(x) {}
  ZZ(long x) : v_(x) {}
  ZZ(unsigned long x) : v_(x) {}
  explicit ZZ(const std::string &s) : v_(s) {}
  ZZ(const mpz_class &m) : v_(m) {}

  const mpz_class &mpz() const { return v_; }
  mpz_class &mpz() { return v_; }

  ZZ operator-() const { return ZZ(mpz_class(-v_)); }
  ZZ operator+(const ZZ &o) const { return ZZ(mpz_class(v_ + o.v_)); }
  ZZ operator-(const ZZ &o) const { return ZZ(mpz_class(v_ - o.v_)); }
  ZZ operator*(const ZZ &o) const { return ZZ(mpz_class(v_ * o.v_)); }
  ZZ &operator+=(const ZZ &o) { v_ += o.v_; return *this; }
  ZZ &operator-=(const ZZ &o) { v_ -= o.v_; return *this; }
  ZZ &operator*=(const ZZ &o) { v_ *= o.v_; return *this; }

  // Truncated division (sign follows C semantics). Use fdiv/divexact helpers
  // for number-theoretic work.
  ZZ operator/(const ZZ &o) const { return ZZ(mpz_class(v_ / o.v_)); }
  ZZ operator%(const ZZ &o) const { return ZZ(mpz_class(v_ % o.v_)); }

  bool operator==(const ZZ &o) const { return v_ == o.v_; }
  bool operator!=(const ZZ &o) const { return v_ != o.v_; }
  bool operator<(const ZZ &o) const { return v_ < o.v_; }
  bool operator<=(const ZZ &o) const { return v_ <= o.v_; }
  bool operator>(const ZZ &o) const { return v_ > o.v_; }
  bool operator>=(const ZZ &o) const { return v_ >= o.v_; }

  bool is_zero() const { return mpz_sgn(v_.get_mpz_t()) == 0; }
  bool is_one() const { return mpz_cmp_ui(v_.get_mpz_t(), 1) == 0; }
  int sign() const { return mpz_sgn(v_.get_mpz_t()); }
  bool is_odd() const { return mpz_odd_p(v_.get_mpz_t()); }
  bool is_even() const { return mpz_even_p(v_.get_mpz_t()); }

  bool fits_long() const { return v_.fits_slong_p(); }
  long to_long() const {
    if (!fits_long()) throw std::overflow_error("ZZ::to_long overflow");
    return v_.get_si();
  }
  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }
  size_t bit_length() const { return mpz_sizeinbase(v_.get_mpz_t(), 2); }
  size_t digit_length() const { return mpz_sizeinbase(v_.get_mpz_t(), 10); }
};

inline ZZ abs(const ZZ &a) { return ZZ(mpz_class(::abs(a.mpz()))); }
inline ZZ gcd(const ZZ &a, const ZZ &b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return ZZ(g);
}
inline ZZ lcm(const ZZ &a, const ZZ &b) {
  mpz_class g;
  mpz_lcm(g.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return ZZ(g);
}
// g = u*a + v*b
inline ZZ gcdext(const ZZ &a, const ZZ &b, ZZ &u, ZZ &v) {
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
             a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  u = ZZ(s);
  v = ZZ(t);
  return ZZ(g);
}
inline ZZ divexact(const ZZ &a, const ZZ &b) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return ZZ(q);
}
inline bool divides(const ZZ &d, const ZZ &a) {
  return mpz_divisible_p(a.mpz().get_mpz_t(), d.mpz().get_mpz_t()) != 0;
}
// floor division and the matching remainder (0 <= r < |b| for b > 0)
inline ZZ fdiv_q(const ZZ &a, const ZZ &b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return ZZ(q);
}
inline ZZ fdiv_r(const ZZ &a, const ZZ &b) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
  return ZZ(r);
}
// nearest integer quotient, ties away from zero (matching mpfr rounding);
// the remainder a - q*b then satisfies |r| <= |b|/2
inline ZZ rdiv_q(const ZZ &a, const ZZ &b) {
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.mpz().get_mpz_t(),
              b.mpz().get_mpz_t());
  mpz_class r2 = 2 * ::abs(r);
  mpz_class ab = ::abs(b.mpz());
  if (mpz_cmp(r2.get_mpz_t(), ab.get_mpz_t()) >= 0) {
    const bool positive_quotient = (a.sign() >= 0) == (b.sign() >= 0);
    q += positive_quotient ? 1 : -1;
  }
  return ZZ(q);
}
inline ZZ pow(const ZZ &a, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), a.mpz().get_mpz_t(), e);
  return ZZ(r);
}
inline ZZ powmod(const ZZ &a, const ZZ &e, const ZZ &m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), a.mpz().get_mpz_t(), e.mpz().get_mpz_t(),
           m.mpz().get_mpz_t());
  return ZZ(r);
}
inline bool invmod(const ZZ &a, const ZZ &m, ZZ &inv) {
  mpz_class r;
  int ok = mpz_invert(r.get_mpz_t(), a.mpz().get_mpz_t(), m.mpz().get_mpz_t());
  if (ok) inv = ZZ(r);
  return ok != 0;
}
inline bool is_perfect_square(const ZZ &a, ZZ *root = nullptr) {
  if (a.sign() < 0) return false;
  mpz_class r;
  int sq = mpz_perfect_square_p(a.mpz().get_mpz_t());
  if (sq && root) {
    mpz_sqrt(r.get_mpz_t(), a.mpz().get_mpz_t());
    *root = ZZ(r);
  }
  return sq != 0;
}
inline ZZ isqrt(const ZZ &a) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), a.mpz().get_mpz_t());
  return ZZ(r);
}
inline bool is_probable_prime(const ZZ &a) {
  return mpz_probab_prime_p(a.mpz().get_mpz_t(), 32) != 0;
}
inline ZZ next_prime(const ZZ &a) {
  mpz_class r;
  mpz_nextprime(r.get_mpz_t(), a.mpz().get_mpz_t());
  return ZZ(r);
}
// Kronecker symbol (a|n), the standard extension of Jacobi to all n
inline int kronecker(const ZZ &a, const ZZ &n) {
  return mpz_kronecker(a.mpz().get_mpz_t(), n.mpz().get_mpz_t());
}
inline ZZ operator*(long a, const ZZ &b) { return ZZ(a) * b; }

inline std::ostream &operator<<(std::ostream &os, const ZZ &a) {
  return os << a.mpz();
}

class QQ {
  mpq_class v_;

public:
  QQ() : v_(0) {}
  QQ(int x) : v_(x) {}
  QQ(long x) : v_(x) {}
  QQ(const ZZ &z) : v_(z.mpz()) {}
  QQ(const ZZ &num, const ZZ &den) : v_(num.mpz(), den.mpz()) {
    if (den.is_zero()) throw std::domain_error("QQ: zero denominator");
    v_.canonicalize();
  }
  explicit QQ(const std::string &s) : v_(s) { v_.canonicalize(); }
  QQ(const mpq_class &m) : v_(m) { v_.canonicalize(); }

  const mpq_class &mpq() const { return v_; }
  ZZ num() const { return ZZ(v_.get_num()); }
  ZZ den() const { return ZZ(v_.get_den()); }

  QQ operator-() const { return QQ(mpq_class(-v_)); }
  QQ operator+(const QQ &o) const { return QQ(mpq_class(v_ + o.v_)); }
  QQ operator-(const QQ &o) const { return QQ(mpq_class(v_ - o.v_)); }
  QQ operator*(const QQ &o) const { return QQ(mpq_class(v_ * o.v_)); }
  QQ operator/(const QQ &o) const {
    if (o.is_zero()) throw std::domain_error("QQ: division by zero");
    return QQ(mpq_class(v_ / o.v_));
  }
  QQ &operator+=(const QQ &o) { v_ += o.v_; return *this; }
  QQ &operator-=(const QQ &o) { v_ -= o.v_; return *this; }
  QQ &operator*=(const QQ &o) { v_ *= o.v_; return *this; }
  QQ &operator/=(const QQ &o) { *this = *this / o; return *this; }

  bool operator==(const QQ &o) const { return v_ == o.v_; }
  bool operator!=(const QQ &o) const { return v_ != o.v_; }
  bool operator<(const QQ &o) const { return v_ < o.v_; }
  bool operator<=(const QQ &o) const { return v_ <= o.v_; }
  bool operator>(const QQ &o) const { return v_ > o.v_; }
  bool operator>=(const QQ &o) const { return v_ >= o.v_; }

  bool is_zero() const { return mpq_sgn(v_.get_mpq_t()) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return mpq_sgn(v_.get_mpq_t()); }
  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }
};

inline QQ abs(const QQ &a) { return a.sign() < 0 ? -a : a; }
inline QQ inverse(const QQ &a) { return QQ(1) / a; }
inline QQ pow(const QQ &a, long e) {
  if (e < 0) return inverse(pow(a, -e));
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), a.num().mpz().get_mpz_t(), (unsigned long)e);
  mpz_pow_ui(d.get_mpz_t(), a.den().mpz().get_mpz_t(), (unsigned long)e);
  return QQ(ZZ(n), ZZ(d));
}
// round to nearest integer, ties away from zero (same convention as rdiv_q
// and as mpfr rounding, so every layer rounds halves identically)
inline ZZ round_to_ZZ(const QQ &a) {
  ZZ n = abs(a.num()), d = a.den();
  ZZ q = fdiv_q(n + n + d, d + d);
  return a.sign() < 0 ? -q : q;
}
inline ZZ floor_to_ZZ(const QQ &a) { return fdiv_q(a.num(), a.den()); }

inline std::ostream &operator<<(std::ostream &os, const QQ &a) {
  return os << a.mpq();
}

} // namespace forge

#endif
