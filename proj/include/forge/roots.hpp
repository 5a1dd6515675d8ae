#ifndef FORGE_ROOTS_HPP
#define FORGE_ROOTS_HPP

#include <vector>

#include "forge/bigfloat.hpp"
#include "forge/poly.hpp"

namespace forge {

// All complex roots of f (with multiplicity collapsed only by the caller;
// inputs here are expected squarefree), accurate to ~`digits` decimal digits.
// Aberth–Ehrlich simultaneous iteration; when residuals stall before the
// target accuracy is met, the whole iteration restarts at doubled working
// precision. Throws std::runtime_error if the iteration cannot converge at
// any precision up to a generous cap (never observed for squarefree input).
std::vector<CC> complex_roots(const Poly<QQ> &f, long digits);

std::vector<CC> complex_roots(const std::vector<CC> &coeffs, long digits);

} // namespace forge

#endif
