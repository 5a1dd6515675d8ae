// Minimal Weierstrass models, Kodaira fibre types, and conductors of
// elliptic curves over Q.  The local analysis is Tate's algorithm in exact
// integer arithmetic at every prime (no shortcuts at p >= 5, so a single
// code path covers 2 and 3 as well); the conductor exponent comes out of
// the fibre type through the Ogg-Saito component count.

#pragma once

#include <string>

#include "forge/elliptic.hpp"

namespace forge {

// coordinate change x = x' + r, y = y' + s x' + t; keeps integral models
// integral and preserves the discriminant
ECurveQ shift_model(const ECurveQ &E, const ZZ &r, const ZZ &s, const ZZ &t);

// coordinate change x = x'/u^2, y = y'/u^3, which multiplies a_i by u^i and
// the discriminant by u^12 (the direction that inflates a model)
ECurveQ scale_model(const ECurveQ &E, const ZZ &u);

struct LocalType {
  std::string kodaira;  // "I0", "I1", ..., "II", "III", "IV", "I0*",
                        // "I1*", ..., "IV*", "III*", "II*"
  long n = 0;           // the n of In / In*, otherwise 0
  long f = 0;           // conductor exponent at p
  long vdisc = 0;       // valuation of the p-minimal discriminant
  ECurveQ p_minimal;    // the p-minimal model the algorithm terminated on
};

// fibre type of an integral model at a prime p
LocalType local_type(const ECurveQ &E, const ZZ &p);

// global minimal model, normalized to a1, a3 in {0, 1} and a2 in {-1, 0, 1}
// (which pins a unique reduced representative of the isomorphism class)
ECurveQ minimal_model(const ECurveQ &E);

// product of p^f over the primes of bad reduction
ZZ conductor(const ECurveQ &E);

}  // namespace forge
