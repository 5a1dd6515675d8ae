#include "forge/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace forge {

long digits_to_bits(long digits) {
  if (digits < 2) digits = 2;
  return (long)std::ceil(digits * 3.3219280948873626) + 8;
}
long bits_to_digits(long bits) {
  return (long)std::floor((bits - 8) / 3.3219280948873626);
}

static mpfr_prec_t min_prec(const BigFloat &a, const BigFloat &b) {
  return std::min(a.prec_bits(), b.prec_bits());
}

BigFloat BigFloat::operator-() const {
  BigFloat r;
  mpfr_set_prec(r.raw(), prec_bits());
  mpfr_neg(r.raw(), v_, MPFR_RNDN);
  return r;
}

#define FORGE_BF_BINOP(op, fn)                                                \
  BigFloat BigFloat::operator op(const BigFloat &o) const {                   \
    BigFloat r;                                                               \
    mpfr_set_prec(r.raw(), min_prec(*this, o));                               \
    fn(r.raw(), v_, o.v_, MPFR_RNDN);                                         \
    return r;                                                                 \
  }
FORGE_BF_BINOP(+, mpfr_add)
FORGE_BF_BINOP(-, mpfr_sub)
FORGE_BF_BINOP(*, mpfr_mul)
FORGE_BF_BINOP(/, mpfr_div)
#undef FORGE_BF_BINOP

BigFloat BigFloat::operator*(long x) const {
  BigFloat r;
  mpfr_set_prec(r.raw(), prec_bits());
  mpfr_mul_si(r.raw(), v_, x, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::operator/(long x) const {
  BigFloat r;
  mpfr_set_prec(r.raw(), prec_bits());
  mpfr_div_si(r.raw(), v_, x, MPFR_RNDN);
  return r;
}

std::string BigFloat::str(long digits) const {
  if (digits <= 0) digits = this->digits();
  mpfr_exp_t e;
  char *s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  bool neg = !mant.empty() && mant[0] == '-';
  std::string d = neg ? mant.substr(1) : mant;
  std::ostringstream os;
  if (neg) os << '-';
  if (d.empty() || mpfr_zero_p(v_)) return "0";
  os << d[0] << '.' << d.substr(1) << 'e' << (e - 1);
  return os.str();
}

long BigFloat::exponent10() const {
  if (mpfr_zero_p(v_)) return -1000000000L;
  return (long)std::floor((double)mpfr_get_exp(v_) * 0.30102999566398);
}

BigFloat bf_pi(long digits) {
  BigFloat r(digits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

#define FORGE_BF_UNFUN(name, fn)                                              \
  BigFloat name(const BigFloat &a) {                                          \
    BigFloat r;                                                               \
    mpfr_set_prec(r.raw(), a.prec_bits());                                    \
    fn(r.raw(), a.raw(), MPFR_RNDN);                                          \
    return r;                                                                 \
  }
FORGE_BF_UNFUN(abs, mpfr_abs)
FORGE_BF_UNFUN(sqrt, mpfr_sqrt)
FORGE_BF_UNFUN(exp, mpfr_exp)
FORGE_BF_UNFUN(log, mpfr_log)
FORGE_BF_UNFUN(sin, mpfr_sin)
FORGE_BF_UNFUN(cos, mpfr_cos)
#undef FORGE_BF_UNFUN

BigFloat atan2(const BigFloat &y, const BigFloat &x) {
  BigFloat r;
  mpfr_set_prec(r.raw(), min_prec(y, x));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat pow_si(const BigFloat &a, long e) {
  BigFloat r;
  mpfr_set_prec(r.raw(), a.prec_bits());
  mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

ZZ round_to_ZZ(const BigFloat &a) {
  mpz_class z;
  mpfr_t t;
  mpfr_init2(t, a.prec_bits());
  mpfr_round(t, a.raw());
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return ZZ(z);
}

ZZ floor_to_ZZ(const BigFloat &a) {
  mpz_class z;
  mpfr_t t;
  mpfr_init2(t, a.prec_bits());
  mpfr_floor(t, a.raw());
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return ZZ(z);
}

BigFloat with_digits(const BigFloat &a, long digits) {
  BigFloat r;
  mpfr_set_prec(r.raw(), digits_to_bits(digits));
  mpfr_set(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

CC CC::operator/(const CC &o) const {
  BigFloat n = norm2(o);
  if (n.is_zero()) throw std::domain_error("CC: division by zero");
  return CC((re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n);
}

std::string CC::str(long digits) const {
  return re.str(digits) + " + " + im.str(digits) + "*i";
}

CC conj(const CC &z) { return CC(z.re, -z.im); }
BigFloat norm2(const CC &z) { return z.re * z.re + z.im * z.im; }
BigFloat abs(const CC &z) { return sqrt(norm2(z)); }

CC sqrt(const CC &z) {
  // principal square root via polar form
  BigFloat r = abs(z);
  BigFloat theta = atan2(z.im, z.re);
  BigFloat half(QQ(1, 2), z.digits());
  BigFloat s = sqrt(r), t = theta * half;
  return CC(s * cos(t), s * sin(t));
}

CC exp(const CC &z) {
  BigFloat m = exp(z.re);
  return CC(m * cos(z.im), m * sin(z.im));
}

CC log(const CC &z) { return CC(log(abs(z)), atan2(z.im, z.re)); }

CC inverse(const CC &z) {
  BigFloat n = norm2(z);
  if (n.is_zero()) throw std::domain_error("CC: inverse of zero");
  return CC(z.re / n, -(z.im / n));
}

CC pow_ui(const CC &z, unsigned long e) {
  CC r(1.0, 0.0, z.digits());
  CC b = z;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

CC from_QQ(const QQ &a, long digits) {
  return CC(BigFloat(a, digits), BigFloat(0.0, digits));
}

CC cc_i(long digits) { return CC(0.0, 1.0, digits); }

} // namespace forge
