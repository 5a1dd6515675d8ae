// Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with the
// chord-tangent group law, over any coefficient domain that supplies field
// operations through a small ops object (exact rationals, finite fields
// F_{p^f}, complex balls, number fields).  The generic layer below is written
// entirely against that ops interface so there is a single group-law
// implementation to test; domain-specific routines (point counting over F_q,
// reduction mod q, twisting) live in elliptic.cpp.

#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "forge/bigfloat.hpp"
#include "forge/finitefield.hpp"
#include "forge/poly.hpp"
#include "forge/rational.hpp"

namespace forge {

template <class K>
struct ECurve {
  K a1, a2, a3, a4, a6;
};

template <class K>
struct EPt {
  bool at_infinity = true;
  K x{}, y{};

  static EPt infinity() { return EPt{}; }
  static EPt xy(K px, K py) {
    EPt P;
    P.at_infinity = false;
    P.x = std::move(px);
    P.y = std::move(py);
    return P;
  }
};

// ---------------------------------------------------------------------------
// field ops objects

struct QOps {
  using Elem = QQ;
  Elem add(const Elem &a, const Elem &b) const { return a + b; }
  Elem sub(const Elem &a, const Elem &b) const { return a - b; }
  Elem mul(const Elem &a, const Elem &b) const { return a * b; }
  Elem neg(const Elem &a) const { return -a; }
  Elem inv(const Elem &a) const {
    if (a.sign() == 0) throw std::domain_error("QOps::inv: division by zero");
    return inverse(a);
  }
  bool is_zero(const Elem &a) const { return a.sign() == 0; }
  bool eq(const Elem &a, const Elem &b) const { return a == b; }
  Elem from_long(long v) const { return QQ(v); }
};

// F_{p^f} = F_p[t]/(h) with h monic irreducible; a prime field is h = t.
// Elements are polynomials of degree < deg h with coefficients in [0, p),
// and every operation returns elements in that normalized form.
struct FqOps {
  ZZ p;
  Poly<ZZ> h;

  FqOps(ZZ p_, Poly<ZZ> h_) : p(std::move(p_)), h(std::move(h_)) {
    if (h.degree() < 1 || !(h.lead() == ZZ(1)))
      throw std::invalid_argument("FqOps: modulus must be monic of degree >= 1");
  }
  static FqOps prime_field(const ZZ &p) {
    return FqOps(p, Poly<ZZ>(std::vector<ZZ>{ZZ(0), ZZ(1)}));
  }

  long ext_degree() const { return h.degree(); }
  ZZ size() const { return pow(p, static_cast<unsigned long>(h.degree())); }

  using Elem = Poly<ZZ>;
  Elem reduce(const Poly<ZZ> &a) const { return pm_mod(a, h, p); }
  Elem add(const Elem &a, const Elem &b) const { return pm_norm(a + b, p); }
  Elem sub(const Elem &a, const Elem &b) const { return pm_norm(a - b, p); }
  Elem mul(const Elem &a, const Elem &b) const { return pm_mulmod(a, b, h, p); }
  Elem neg(const Elem &a) const { return pm_norm(-a, p); }
  Elem inv(const Elem &a) const {
    auto u = pm_invmod(a, h, p);
    if (!u) throw std::domain_error("FqOps::inv: element not invertible");
    return *u;
  }
  Elem pow_elem(const Elem &a, const ZZ &e) const { return pm_powmod(a, e, h, p); }
  bool is_zero(const Elem &a) const { return a.is_zero(); }
  bool eq(const Elem &a, const Elem &b) const { return a == b; }
  Elem from_long(long v) const { return reduce(Poly<ZZ>(ZZ(v))); }
  Elem from_ZZ(const ZZ &v) const { return Poly<ZZ>(mod_norm(v, p)); }
  // q-integral rational mapped through the residue map
  Elem from_QQ(const QQ &v) const {
    ZZ dinv;
    if (!invmod(mod_norm(v.den(), p), p, dinv))
      throw std::domain_error("FqOps::from_QQ: denominator not invertible");
    return Poly<ZZ>(mod_norm(v.num() * dinv, p));
  }
};

// complex approximations; eq/is_zero compare against an absolute tolerance
struct CCOps {
  long digits;
  BigFloat eps;

  explicit CCOps(long digits_)
      : digits(digits_), eps(pow_si(BigFloat(10.0, digits_), -(digits_ * 3 / 4))) {}

  using Elem = CC;
  Elem add(const Elem &a, const Elem &b) const { return a + b; }
  Elem sub(const Elem &a, const Elem &b) const { return a - b; }
  Elem mul(const Elem &a, const Elem &b) const { return a * b; }
  Elem neg(const Elem &a) const { return -a; }
  Elem inv(const Elem &a) const { return inverse(a); }
  bool is_zero(const Elem &a) const { return abs(a).cmp(eps) < 0; }
  bool eq(const Elem &a, const Elem &b) const { return is_zero(a - b); }
  Elem from_long(long v) const { return CC(BigFloat(QQ(v), digits), BigFloat(digits)); }
};

// ---------------------------------------------------------------------------
// generic layer

template <class Ops>
struct ECInvariants {
  typename Ops::Elem b2, b4, b6, b8, c4, c6, disc;
};

template <class Ops>
ECInvariants<Ops> ec_invariants(const Ops &F, const ECurve<typename Ops::Elem> &E) {
  using El = typename Ops::Elem;
  auto add = [&](const El &a, const El &b) { return F.add(a, b); };
  auto sub = [&](const El &a, const El &b) { return F.sub(a, b); };
  auto mul = [&](const El &a, const El &b) { return F.mul(a, b); };
  auto scale = [&](long k, const El &a) { return F.mul(F.from_long(k), a); };

  ECInvariants<Ops> I;
  I.b2 = add(mul(E.a1, E.a1), scale(4, E.a2));
  I.b4 = add(scale(2, E.a4), mul(E.a1, E.a3));
  I.b6 = add(mul(E.a3, E.a3), scale(4, E.a6));
  I.b8 = sub(add(add(mul(mul(E.a1, E.a1), E.a6), scale(4, mul(E.a2, E.a6))),
                 sub(mul(E.a2, mul(E.a3, E.a3)), mul(E.a1, mul(E.a3, E.a4)))),
             mul(E.a4, E.a4));
  I.c4 = sub(mul(I.b2, I.b2), scale(24, I.b4));
  I.c6 = add(sub(scale(36, mul(I.b2, I.b4)), mul(I.b2, mul(I.b2, I.b2))),
             scale(-216, I.b6));
  I.disc = add(sub(F.neg(mul(mul(I.b2, I.b2), I.b8)), scale(8, mul(I.b4, mul(I.b4, I.b4)))),
               sub(scale(9, mul(I.b2, mul(I.b4, I.b6))), scale(27, mul(I.b6, I.b6))));
  return I;
}

template <class Ops>
bool ec_on_curve(const Ops &F, const ECurve<typename Ops::Elem> &E,
                 const EPt<typename Ops::Elem> &P) {
  if (P.at_infinity) return true;
  using El = typename Ops::Elem;
  El lhs = F.add(F.mul(P.y, P.y),
                 F.add(F.mul(E.a1, F.mul(P.x, P.y)), F.mul(E.a3, P.y)));
  El x2 = F.mul(P.x, P.x);
  El rhs = F.add(F.mul(x2, P.x),
                 F.add(F.mul(E.a2, x2), F.add(F.mul(E.a4, P.x), E.a6)));
  return F.is_zero(F.sub(lhs, rhs));
}

template <class Ops>
EPt<typename Ops::Elem> ec_neg(const Ops &F, const ECurve<typename Ops::Elem> &E,
                               const EPt<typename Ops::Elem> &P) {
  if (P.at_infinity) return P;
  return EPt<typename Ops::Elem>::xy(
      P.x, F.neg(F.add(P.y, F.add(F.mul(E.a1, P.x), E.a3))));
}

template <class Ops>
EPt<typename Ops::Elem> ec_add(const Ops &F, const ECurve<typename Ops::Elem> &E,
                               const EPt<typename Ops::Elem> &P,
                               const EPt<typename Ops::Elem> &Q) {
  using El = typename Ops::Elem;
  if (P.at_infinity) return Q;
  if (Q.at_infinity) return P;

  El lambda, nu;
  if (F.eq(P.x, Q.x)) {
    El neg_py = F.neg(F.add(P.y, F.add(F.mul(E.a1, P.x), E.a3)));
    if (F.eq(Q.y, neg_py)) return EPt<El>::infinity();
    // same x and Q != -P forces P == Q: tangent line
    El den = F.inv(F.add(F.add(P.y, P.y), F.add(F.mul(E.a1, P.x), E.a3)));
    El x2 = F.mul(P.x, P.x);
    lambda = F.mul(F.add(F.add(F.mul(F.from_long(3), x2),
                               F.mul(F.from_long(2), F.mul(E.a2, P.x))),
                         F.sub(E.a4, F.mul(E.a1, P.y))),
                   den);
    nu = F.mul(F.add(F.sub(F.add(F.mul(E.a4, P.x), F.mul(F.from_long(2), E.a6)),
                           F.mul(x2, P.x)),
                     F.neg(F.mul(E.a3, P.y))),
               den);
  } else {
    El den = F.inv(F.sub(Q.x, P.x));
    lambda = F.mul(F.sub(Q.y, P.y), den);
    nu = F.mul(F.sub(F.mul(P.y, Q.x), F.mul(Q.y, P.x)), den);
  }
  El x3 = F.sub(F.add(F.mul(lambda, lambda), F.mul(E.a1, lambda)),
                F.add(E.a2, F.add(P.x, Q.x)));
  El y3 = F.sub(F.neg(F.mul(F.add(lambda, E.a1), x3)), F.add(nu, E.a3));
  return EPt<El>::xy(x3, y3);
}

template <class Ops>
EPt<typename Ops::Elem> ec_mul(const Ops &F, const ECurve<typename Ops::Elem> &E,
                               const ZZ &n, const EPt<typename Ops::Elem> &P) {
  using El = typename Ops::Elem;
  if (n.sign() < 0) return ec_mul(F, E, -n, ec_neg(F, E, P));
  EPt<El> R = EPt<El>::infinity();
  const size_t bits = n.bit_length();
  for (size_t i = bits; i-- > 0;) {
    R = ec_add(F, E, R, R);
    if (mpz_tstbit(n.mpz().get_mpz_t(), i)) R = ec_add(F, E, R, P);
  }
  return R;
}

// ---------------------------------------------------------------------------
// F_q and Q specific routines (elliptic.cpp)

using ECurveQ = ECurve<QQ>;
using EPtQ = EPt<QQ>;
using ECurveFq = ECurve<Poly<ZZ>>;
using EPtFq = EPt<Poly<ZZ>>;

ECurveQ ecq(long a1, long a2, long a3, long a4, long a6);
ECurveQ ecq(const ZZ &a1, const ZZ &a2, const ZZ &a3, const ZZ &a4, const ZZ &a6);

// reduce a curve with q-integral coefficients through the residue map of F
ECurveFq curve_mod(const ECurveQ &E, const FqOps &F);

// reduction of a rational point at the prime F.p (prime field): infinity when
// the prime divides the denominator of x (the r/t^2, s/t^3 convention), else
// coordinate-wise
EPtFq reduce_point_q(const EPtQ &P, const FqOps &F);

// square root in F_{p^f} for odd p; empty when the element is a non-square
std::optional<Poly<ZZ>> fq_sqrt(const FqOps &F, const Poly<ZZ> &a);

// uniformly random affine point (odd characteristic)
EPtFq ec_random_point(const FqOps &F, const ECurveFq &E, std::mt19937_64 &rng);

// #E(F_{p^f}) for odd p: exhaustive below 10^4, else baby-step giant-step
// with random points until a single candidate survives in the Hasse interval
ZZ group_order_fq(const FqOps &F, const ECurveFq &E);

// whether Q lies in p*E(F_q); N = #E(F_q) must be supplied
bool divisible_by_p_in_fq(const FqOps &F, const ECurveFq &E, const EPtFq &Q,
                          const ZZ &p, const ZZ &N);

// short-form quadratic twist by d: y^2 = x^3 - 27 c4 d^2 x - 54 c6 d^3
ECurveQ quadratic_twist(const ECurveQ &E, const ZZ &d);

// the unique singular point of the reduction of an integral model at q;
// callers must ensure the reduction is singular (q divides the discriminant)
std::pair<ZZ, ZZ> singular_point_mod(const ECurveQ &E, const ZZ &q);

enum class RedKind { good, mult_split, mult_nonsplit, additive };

// classification of the reduction of the given (assumed q-minimal) integral
// model at q, via the tangent cone at the singular point of the reduction
RedKind reduction_type(const ECurveQ &E, const ZZ &q);

// trace of Frobenius: q + 1 - #E(F_q) at good q, else +-1 / 0 by reduction kind
ZZ trace_of_frobenius(const ECurveQ &E, const ZZ &q);

enum class CheckResult { confirmed, inconclusive };

// p-torsion triviality from group orders at >= 2 primes of distinct residue
// characteristic: confirmed when p does not divide their gcd
CheckResult torsion_trivial_from_orders(const std::vector<ZZ> &orders, const ZZ &p);

}  // namespace forge
