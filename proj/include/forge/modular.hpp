// The analytic side of the modular parametrization X_0(N) -> E: integer
// Fourier coefficients of the attached weight-two newform, the series
// phi(tau) = sum a_n/n e^{2 pi i n tau}, period lattices of short
// Weierstrass models over C certified through theta constants, the inverse
// of the Weierstrass uniformization, and the full conjugate orbit of a CM
// point.  Everything here carries explicit error control: a series is only
// summed once its tail is provably below the requested accuracy.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "forge/bigfloat.hpp"
#include "forge/classgroup.hpp"
#include "forge/elliptic.hpp"

namespace forge {

// thrown when the available coefficient range cannot push the series tail
// below the requested accuracy; `required` is a range that provably can
struct InsufficientTerms : std::runtime_error {
  long required;
  InsufficientTerms(const std::string &what, long required_)
      : std::runtime_error(what), required(required_) {}
};

// a_1..a_M of the newform attached to E by modularity; every value fits a
// long since |a_n| <= n^{3/2} for the ranges accepted here
struct FourierCache {
  ECurveQ curve;
  std::vector<long> a;  // a[n] for 1 <= n <= M(), a[0] unused
  long M() const { return static_cast<long>(a.size()) - 1; }
};

// E must be an integral global minimal model (checked); prime coefficients
// come from point counts over F_q, to +-1/0 at the bad primes by reduction
// kind, and the rest follow from the Hecke recursions
FourierCache fourier_coefficients(const ECurveQ &E, long M);

// same, backed by an append-only text cache: blocks start with a line
//   curve=a1,a2,a3,a4,a6 M=<count>
// followed by <count> lines `n a_n`; blocks for other curves are skipped,
// and when no block covers the requested range the extended coefficient
// list is appended as a fresh block
FourierCache fourier_coefficients(const ECurveQ &E, long M,
                                  const std::string &path);

void save_fourier_cache(const FourierCache &F, const std::string &path);

// phi(tau) = sum_{n>=1} (a_n/n) e^{2 pi i n tau} for Im tau > 0, accurate
// to 10^-digits; throws InsufficientTerms when the cache is too short, with
// a sufficient range attached (tail estimate: |a_n| <= n^{3/2}, so the tail
// past M is below sqrt(M+1) r^{M+1} / (1-r)^2 with r = e^{-2 pi Im tau})
CC phi_series(const FourierCache &F, const CC &tau, long digits);

// period lattice of y^2 = x^3 + A x + B over C, by the arithmetic-geometric
// mean on the root differences; the returned basis is certified by matching
// the theta-constant factorization of the root differences against the
// roots themselves, and satisfies Im(w1/w2) > 0, with w2 spanning the real
// period direction (w2 > 0, w1 purely imaginary or with Re w1 = w2/2)
struct PeriodData {
  CC w1, w2;
  std::vector<CC> roots;  // the three roots, in the certified ordering
};

PeriodData period_lattice(const ZZ &A, const ZZ &B, long digits);

// complex points of y^2 = x^3 + A x + B
struct CPoint {
  bool at_infinity = false;
  CC x, y;
};

// z mod the lattice of L -> (wp(z), wp'(z)/2): the argument is reduced into
// the fundamental cell, halved until the Laurent series of wp converges
// fast, and the point is doubled back up with the group law; the result
// satisfies the curve equation to 10^(5-digits)
CPoint uniformize(const PeriodData &L, const ZZ &A, const ZZ &B, const CC &z,
                  long digits);

// remainder of z modulo Z w1 + Z w2, coefficients reduced into [-1/2, 1/2)
CC reduce_mod_lattice(const CC &z, const CC &w1, const CC &w2);

// labels for the 2p conjugates of a CM point: `rotation` indexes the class
// group element acting, `reflected` marks the complex-conjugate copy
struct OrbitLabel {
  bool reflected = false;
  int rotation = 0;
};

struct ConjugateOrbit {
  std::vector<CC> z;  // 2p values of phi: p rotations, then p reflections
  std::vector<OrbitLabel> labels;
};

// phi at every tau of the orbit plus the complex-conjugate values (the
// Fourier coefficients are real, so conjugating tau across the imaginary
// axis conjugates phi); requires an orbit of odd prime size
ConjugateOrbit conjugate_orbit(const TauOrbit &orb, const FourierCache &F,
                               long digits);

// [0, 0, 0, -27 c4, -54 c6]: the standard short model, with lattice equal
// to (1/6) times the lattice of E and points identified through
// X = 36 x + 3 b2, Y = 108 (2 y + a1 x + a3)
ECurveQ short_model(const ECurveQ &E);

// invert that identification: a complex point of short_model(E) -> the
// corresponding complex point of E
CPoint short_to_curve(const ECurveQ &E, const CPoint &P, long digits);

}  // namespace forge
