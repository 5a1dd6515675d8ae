// Tate's algorithm and minimal models.  The implementation follows the
// classical ladder: translate the singular point of the reduction to the
// origin, read off the multiplicative and small additive types from
// valuations of a6, b8, b6, then normalize and walk the star types via
// repeated-root tests of the reduced cubic and its two companion
// quadratics.  A model that survives to the end is divisible enough to be
// rescaled down, and the algorithm restarts on the smaller model, so every
// terminal branch reports data of the p-minimal model.

#include "forge/minimal.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "forge/finitefield.hpp"
#include "forge/zarith.hpp"

namespace forge {

namespace {

ZZ ai_int(const QQ &a, const char *who) {
  if (!a.den().is_one())
    throw std::invalid_argument(std::string(who) + ": integral model required");
  return a.num();
}

struct ZModel {
  ZZ a1, a2, a3, a4, a6;
  ZZ b2, b4, b6, b8, disc;
};

ZModel unpack(const ECurveQ &E, const char *who) {
  ZModel m;
  m.a1 = ai_int(E.a1, who);
  m.a2 = ai_int(E.a2, who);
  m.a3 = ai_int(E.a3, who);
  m.a4 = ai_int(E.a4, who);
  m.a6 = ai_int(E.a6, who);
  m.b2 = m.a1 * m.a1 + ZZ(4) * m.a2;
  m.b4 = ZZ(2) * m.a4 + m.a1 * m.a3;
  m.b6 = m.a3 * m.a3 + ZZ(4) * m.a6;
  m.b8 = m.a1 * m.a1 * m.a6 + ZZ(4) * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 +
         m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
  m.disc = -m.b2 * m.b2 * m.b8 - ZZ(8) * m.b4 * m.b4 * m.b4 -
           ZZ(27) * m.b6 * m.b6 + ZZ(9) * m.b2 * m.b4 * m.b6;
  return m;
}

// valuation that treats 0 as divisible by any power of p
long vz(const ZZ &x, const ZZ &p) {
  if (x.is_zero()) return 1L << 30;
  return valuation(x, p);
}

bool squarefree_mod(const std::vector<PmFactor> &fac) {
  for (const auto &fm : fac)
    if (fm.multiplicity > 1) return false;
  return true;
}

// the root of the unique repeated linear factor
ZZ repeated_root(const std::vector<PmFactor> &fac, const ZZ &p,
                 const char *where) {
  for (const auto &fm : fac)
    if (fm.multiplicity >= 2 && fm.factor.degree() == 1)
      return mod_norm(-fm.factor.coeff(0), p);
  throw std::logic_error(std::string("local_type: expected a repeated F_p "
                                     "root in ") +
                         where);
}

}  // namespace

ECurveQ shift_model(const ECurveQ &E, const ZZ &r, const ZZ &s, const ZZ &t) {
  QQ rq{r}, sq{s}, tq{t};
  ECurveQ R;
  R.a1 = E.a1 + QQ(2) * sq;
  R.a2 = E.a2 - sq * E.a1 + QQ(3) * rq - sq * sq;
  R.a3 = E.a3 + rq * E.a1 + QQ(2) * tq;
  R.a4 = E.a4 - sq * E.a3 + QQ(2) * rq * E.a2 - (tq + rq * sq) * E.a1 +
         QQ(3) * rq * rq - QQ(2) * sq * tq;
  R.a6 = E.a6 + rq * E.a4 + rq * rq * E.a2 + rq * rq * rq - tq * E.a3 -
         tq * tq - rq * tq * E.a1;
  return R;
}

ECurveQ scale_model(const ECurveQ &E, const ZZ &u) {
  if (u.is_zero()) throw std::invalid_argument("scale_model: u must be nonzero");
  QQ u1{u};
  QQ u2 = u1 * u1, u3 = u2 * u1, u4 = u2 * u2, u6 = u4 * u2;
  return ECurveQ{E.a1 * u1, E.a2 * u2, E.a3 * u3, E.a4 * u4, E.a6 * u6};
}

LocalType local_type(const ECurveQ &E, const ZZ &p) {
  if (p < ZZ(2) || !is_probable_prime(p))
    throw std::invalid_argument("local_type: p must be prime");
  ECurveQ cur = E;
  for (int restart = 0; restart < 64; ++restart) {
    ZModel m = unpack(cur, "local_type");
    if (m.disc.is_zero())
      throw std::invalid_argument("local_type: singular curve");
    long vd = vz(m.disc, p);
    if (vd == 0) return LocalType{"I0", 0, 0, 0, cur};

    // move the singular point of the reduction to (0, 0); afterwards p
    // divides a3, a4 and a6
    auto [x0, y0] = singular_point_mod(cur, p);
    cur = shift_model(cur, x0, ZZ(0), y0);
    m = unpack(cur, "local_type");
    if (vz(m.a3, p) < 1 || vz(m.a4, p) < 1 || vz(m.a6, p) < 1)
      throw std::logic_error("local_type: singular point shift failed");

    if (vz(m.b2, p) == 0)
      return LocalType{"I" + std::to_string(vd), vd, 1, vd, cur};
    if (vz(m.a6, p) < 2) return LocalType{"II", 0, vd, vd, cur};
    if (vz(m.b8, p) < 3) return LocalType{"III", 0, vd - 1, vd, cur};
    if (vz(m.b6, p) < 3) return LocalType{"IV", 0, vd - 2, vd, cur};

    // normalize so that p | a1, a2 and p^2 | a3, a4 and p^3 | a6; for odd p
    // the two half-translations are forced, at p = 2 a tiny search does it
    if (p == ZZ(2)) {
      bool found = false;
      for (long s = 0; s < 2 && !found; ++s)
        for (long t = 0; t < 8 && !found; ++t) {
          ECurveQ cand = shift_model(cur, ZZ(0), ZZ(s), ZZ(t));
          ZModel c = unpack(cand, "local_type");
          if (vz(c.a1, p) >= 1 && vz(c.a2, p) >= 1 && vz(c.a3, p) >= 2 &&
              vz(c.a4, p) >= 2 && vz(c.a6, p) >= 3) {
            cur = cand;
            found = true;
          }
        }
      if (!found)
        throw std::logic_error("local_type: no normalizing shift at 2");
    } else {
      ZZ inv2;
      invmod(ZZ(2), p, inv2);
      cur = shift_model(cur, ZZ(0), mod_norm(-m.a1 * inv2, p), ZZ(0));
      m = unpack(cur, "local_type");
      ZZ p2 = p * p, inv2sq;
      invmod(ZZ(2), p2, inv2sq);
      cur = shift_model(cur, ZZ(0), ZZ(0), fdiv_r(-m.a3 * inv2sq, p2));
    }
    m = unpack(cur, "local_type");
    ZZ p2 = p * p, p3 = p2 * p;
    if (vz(m.a1, p) < 1 || vz(m.a2, p) < 1 || vz(m.a3, p) < 2 ||
        vz(m.a4, p) < 2 || vz(m.a6, p) < 3)
      throw std::logic_error("local_type: normalization invariant violated");

    // the reduction is a cuspidal cubic; its type is decided by the root
    // pattern of P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3) over F_p
    Poly<ZZ> P(std::vector<ZZ>{mod_norm(divexact(m.a6, p3), p),
                               mod_norm(divexact(m.a4, p2), p),
                               mod_norm(divexact(m.a2, p), p), ZZ(1)});
    auto fac = pm_factor(P, p);
    if (squarefree_mod(fac)) return LocalType{"I0*", 0, vd - 4, vd, cur};

    int maxmult = 0;
    for (const auto &fm : fac) maxmult = std::max(maxmult, fm.multiplicity);

    if (maxmult == 2) {
      // double root: walk the I_n* chain, alternating repeated-root tests
      // of Y^2 + (a3/p^m1) Y - a6/p^(2 m1) and
      // (a2/p) X^2 + (a4/p^(m1+1)) X + a6/p^(2 m1 + 1)
      cur = shift_model(cur, p * repeated_root(fac, p, "the reduced cubic"),
                        ZZ(0), ZZ(0));
      long nn = 1, m1 = 2;
      for (long inner = 0; inner <= vd + 8; ++inner) {
        ZModel c = unpack(cur, "local_type");
        ZZ pm1 = pow(p, static_cast<unsigned long>(m1));
        if (vz(c.a3, p) < m1 || vz(c.a6, p) < 2 * m1)
          throw std::logic_error("local_type: star chain lost divisibility");
        Poly<ZZ> q1(std::vector<ZZ>{mod_norm(-divexact(c.a6, pm1 * pm1), p),
                                    mod_norm(divexact(c.a3, pm1), p), ZZ(1)});
        auto f1 = pm_factor(q1, p);
        if (squarefree_mod(f1))
          return LocalType{"I" + std::to_string(nn) + "*", nn, vd - 4 - nn,
                           vd, cur};
        cur = shift_model(cur, ZZ(0), ZZ(0),
                          pm1 * repeated_root(f1, p, "the star chain"));
        ++nn;
        c = unpack(cur, "local_type");
        if (vz(c.a4, p) < m1 + 1 || vz(c.a6, p) < 2 * m1 + 1 ||
            vz(c.a2, p) != 1)
          throw std::logic_error("local_type: star chain lost divisibility");
        Poly<ZZ> q2(std::vector<ZZ>{mod_norm(divexact(c.a6, pm1 * pm1 * p), p),
                                    mod_norm(divexact(c.a4, pm1 * p), p),
                                    mod_norm(divexact(c.a2, p), p)});
        auto f2 = pm_factor(q2, p);
        if (squarefree_mod(f2))
          return LocalType{"I" + std::to_string(nn) + "*", nn, vd - 4 - nn,
                           vd, cur};
        cur = shift_model(cur, pm1 * repeated_root(f2, p, "the star chain"),
                          ZZ(0), ZZ(0));
        ++nn;
        ++m1;
      }
      throw std::logic_error("local_type: star chain did not terminate");
    }

    // triple root: one more translation, then Y^2 + (a3/p^2) Y - a6/p^4
    // separates IV* from the tail of the ladder
    cur = shift_model(cur, p * repeated_root(fac, p, "the reduced cubic"),
                      ZZ(0), ZZ(0));
    m = unpack(cur, "local_type");
    if (vz(m.a3, p) < 2 || vz(m.a6, p) < 4)
      throw std::logic_error("local_type: triple root shift failed");
    Poly<ZZ> q(std::vector<ZZ>{mod_norm(-divexact(m.a6, p2 * p2), p),
                               mod_norm(divexact(m.a3, p2), p), ZZ(1)});
    auto fq = pm_factor(q, p);
    if (squarefree_mod(fq)) return LocalType{"IV*", 0, vd - 6, vd, cur};
    cur = shift_model(cur, ZZ(0), ZZ(0),
                      p2 * repeated_root(fq, p, "the IV* test"));
    m = unpack(cur, "local_type");
    if (vz(m.a4, p) < 4) return LocalType{"III*", 0, vd - 7, vd, cur};
    if (vz(m.a6, p) < 6) return LocalType{"II*", 0, vd - 8, vd, cur};

    // not p-minimal: every a_i is divisible by p^i, scale down and restart
    if (vz(m.a1, p) < 1 || vz(m.a2, p) < 2 || vz(m.a3, p) < 3 ||
        vz(m.a4, p) < 4 || vz(m.a6, p) < 6)
      throw std::logic_error("local_type: rescale divisibility violated");
    cur = ECurveQ{QQ(divexact(m.a1, p)), QQ(divexact(m.a2, p2)),
                  QQ(divexact(m.a3, p3)), QQ(divexact(m.a4, p2 * p2)),
                  QQ(divexact(m.a6, p3 * p3))};
  }
  throw std::logic_error("local_type: rescale loop did not terminate");
}

ECurveQ minimal_model(const ECurveQ &E) {
  ZModel m0 = unpack(E, "minimal_model");
  if (m0.disc.is_zero())
    throw std::invalid_argument("minimal_model: singular curve");
  ECurveQ cur = E;
  for (const auto &[p, e] : factorize(m0.disc)) {
    (void)e;
    cur = local_type(cur, p).p_minimal;
  }
  // unique reduced representative: a1, a3 in {0, 1} and a2 in {-1, 0, 1}
  ZModel m = unpack(cur, "minimal_model");
  cur = shift_model(cur, ZZ(0), -fdiv_q(m.a1, ZZ(2)), ZZ(0));
  m = unpack(cur, "minimal_model");
  cur = shift_model(cur, -fdiv_q(m.a2 + ZZ(1), ZZ(3)), ZZ(0), ZZ(0));
  m = unpack(cur, "minimal_model");
  cur = shift_model(cur, ZZ(0), ZZ(0), -fdiv_q(m.a3, ZZ(2)));
  return cur;
}

ZZ conductor(const ECurveQ &E) {
  ECurveQ Em = minimal_model(E);
  ZModel m = unpack(Em, "conductor");
  ZZ N(1);
  for (const auto &[p, e] : factorize(m.disc)) {
    (void)e;
    N = N * pow(p, static_cast<unsigned long>(local_type(Em, p).f));
  }
  return N;
}

}  // namespace forge
