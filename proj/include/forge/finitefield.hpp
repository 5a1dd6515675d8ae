#pragma once

// Arithmetic in F_p and factorization of univariate polynomials over F_p.
// Polynomials over F_p reuse Poly<ZZ> with every coefficient normalized into
// [0, p); the pm_ helpers keep that normalization as an invariant of their
// outputs, inputs may be arbitrary integers.

#include <optional>
#include <vector>

#include "forge/poly.hpp"

namespace forge {

// representative of a mod p in [0, p)
inline ZZ mod_norm(const ZZ &a, const ZZ &p) { return fdiv_r(a, p); }

Poly<ZZ> pm_norm(const Poly<ZZ> &f, const ZZ &p);
Poly<ZZ> pm_mul(const Poly<ZZ> &a, const Poly<ZZ> &b, const ZZ &p);
Poly<ZZ> pm_monic(const Poly<ZZ> &f, const ZZ &p);
void pm_divrem(const Poly<ZZ> &a, const Poly<ZZ> &b, const ZZ &p, Poly<ZZ> &q,
               Poly<ZZ> &r);
Poly<ZZ> pm_mod(const Poly<ZZ> &a, const Poly<ZZ> &b, const ZZ &p);
Poly<ZZ> pm_gcd(const Poly<ZZ> &a, const Poly<ZZ> &b, const ZZ &p);  // monic
Poly<ZZ> pm_mulmod(const Poly<ZZ> &a, const Poly<ZZ> &b, const Poly<ZZ> &f,
                   const ZZ &p);
Poly<ZZ> pm_powmod(const Poly<ZZ> &base, const ZZ &e, const Poly<ZZ> &f,
                   const ZZ &p);

// u with a*u = 1 mod (m, p); empty when gcd(a, m) is not constant
std::optional<Poly<ZZ>> pm_invmod(const Poly<ZZ> &a, const Poly<ZZ> &m,
                                  const ZZ &p);

struct PmFactor {
  Poly<ZZ> factor;  // monic irreducible
  int multiplicity;

  bool operator==(const PmFactor &o) const {
    return factor == o.factor && multiplicity == o.multiplicity;
  }
};

// Full factorization f = lead * prod factor^multiplicity over F_p.
// Deterministic: the equal-degree splitting draws its randomness from a
// generator seeded by (p, f).  Factors are sorted by degree, then
// lexicographically by coefficients.
std::vector<PmFactor> pm_factor(const Poly<ZZ> &f, const ZZ &p);

bool pm_is_irreducible(const Poly<ZZ> &f, const ZZ &p);

// roots of f in F_p, ascending
std::vector<ZZ> pm_roots(const Poly<ZZ> &f, const ZZ &p);

// square root of a mod an odd prime p (or p = 2); empty if a is not a square
std::optional<ZZ> sqrt_mod(const ZZ &a, const ZZ &p);

}  // namespace forge
