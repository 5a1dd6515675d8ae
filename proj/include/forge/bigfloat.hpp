#ifndef FORGE_BIGFLOAT_HPP
#define FORGE_BIGFLOAT_HPP

#include <string>
#include <utility>

#include <mpfr.h>

#include "forge/rational.hpp"

// Fixed-precision real/complex arithmetic with explicit decimal-digit
// accounting. A BigFloat carries its working precision; any binary operation
// computes at (and its result reports) the minimum of the operand precisions,
// so accuracy claims degrade monotonically and a result can never pretend to
// more digits than its least precise input.

namespace forge {

long digits_to_bits(long digits);
long bits_to_digits(long bits);

class BigFloat {
  mpfr_t v_;

public:
  static constexpr long kDefaultDigits = 40;

  explicit BigFloat(long digits = kDefaultDigits) {
    mpfr_init2(v_, digits_to_bits(digits));
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double x, long digits) {
    mpfr_init2(v_, digits_to_bits(digits));
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(const ZZ &x, long digits) {
    mpfr_init2(v_, digits_to_bits(digits));
    mpfr_set_z(v_, x.mpz().get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const QQ &x, long digits) {
    mpfr_init2(v_, digits_to_bits(digits));
    mpfr_set_q(v_, x.mpq().get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const std::string &s, long digits) {
    mpfr_init2(v_, digits_to_bits(digits));
    mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
  }
  BigFloat(const BigFloat &o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat &&o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }
  BigFloat &operator=(const BigFloat &o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat &operator=(BigFloat &&o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  long prec_bits() const { return mpfr_get_prec(v_); }
  long digits() const { return bits_to_digits(prec_bits()); }

  BigFloat operator-() const;
  BigFloat operator+(const BigFloat &o) const;
  BigFloat operator-(const BigFloat &o) const;
  BigFloat operator*(const BigFloat &o) const;
  BigFloat operator/(const BigFloat &o) const;
  BigFloat &operator+=(const BigFloat &o) { return *this = *this + o; }
  BigFloat &operator-=(const BigFloat &o) { return *this = *this - o; }
  BigFloat &operator*=(const BigFloat &o) { return *this = *this * o; }
  BigFloat &operator/=(const BigFloat &o) { return *this = *this / o; }

  BigFloat operator*(long x) const;
  BigFloat operator/(long x) const;

  int cmp(const BigFloat &o) const { return mpfr_cmp(v_, o.v_); }
  bool operator<(const BigFloat &o) const { return cmp(o) < 0; }
  bool operator<=(const BigFloat &o) const { return cmp(o) <= 0; }
  bool operator>(const BigFloat &o) const { return cmp(o) > 0; }
  bool operator>=(const BigFloat &o) const { return cmp(o) >= 0; }
  bool operator==(const BigFloat &o) const { return cmp(o) == 0; }

  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(long digits = 0) const;

  // exponent of the leading bit; log10(|x|) ~ exponent10()
  long exponent10() const;
};

BigFloat bf_pi(long digits);
BigFloat abs(const BigFloat &a);
BigFloat sqrt(const BigFloat &a);
BigFloat exp(const BigFloat &a);
BigFloat log(const BigFloat &a);
BigFloat sin(const BigFloat &a);
BigFloat cos(const BigFloat &a);
BigFloat atan2(const BigFloat &y, const BigFloat &x);
BigFloat pow_si(const BigFloat &a, long e);
ZZ round_to_ZZ(const BigFloat &a);
ZZ floor_to_ZZ(const BigFloat &a);
// a with precision changed (extension pads with zero bits: no new information,
// but lets higher-precision algorithms consume low-precision inputs explicitly)
BigFloat with_digits(const BigFloat &a, long digits);

// Complex numbers as coordinate pairs of BigFloat. Only the operations the
// pipeline needs; precision propagation inherits from BigFloat.
struct CC {
  BigFloat re, im;

  CC() = default;
  explicit CC(long digits) : re(digits), im(digits) {}
  CC(const BigFloat &r, const BigFloat &i) : re(r), im(i) {}
  CC(double r, double i, long digits) : re(r, digits), im(i, digits) {}

  long digits() const { return std::min(re.digits(), im.digits()); }

  CC operator-() const { return CC(-re, -im); }
  CC operator+(const CC &o) const { return CC(re + o.re, im + o.im); }
  CC operator-(const CC &o) const { return CC(re - o.re, im - o.im); }
  CC operator*(const CC &o) const {
    return CC(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  CC operator/(const CC &o) const;
  CC &operator+=(const CC &o) { return *this = *this + o; }
  CC &operator-=(const CC &o) { return *this = *this - o; }
  CC &operator*=(const CC &o) { return *this = *this * o; }

  CC operator*(const BigFloat &s) const { return CC(re * s, im * s); }
  CC operator/(const BigFloat &s) const { return CC(re / s, im / s); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  std::string str(long digits = 0) const;
};

CC conj(const CC &z);
BigFloat norm2(const CC &z); // re^2 + im^2
BigFloat abs(const CC &z);
CC sqrt(const CC &z);
CC exp(const CC &z);
CC log(const CC &z); // principal branch
CC inverse(const CC &z);
CC pow_ui(const CC &z, unsigned long e);
CC from_QQ(const QQ &a, long digits);
CC cc_i(long digits);

} // namespace forge

#endif
