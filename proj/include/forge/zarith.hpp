#ifndef FORGE_ZARITH_HPP
#define FORGE_ZARITH_HPP

#include <optional>
#include <utility>
#include <vector>

#include "forge/rational.hpp"

// Multiprecision integer number theory helpers: factorization, valuations,
// and square roots modulo prime powers and composites. Factorization is trial division followed by Brent's cycle
// variant of Pollard rho, which is ample for the discriminant/conductor
// sized inputs this project meets.

namespace forge {

// prime factorization of |n| as (prime, exponent) pairs sorted by prime;
// n must be nonzero, and units contribute no factors
std::vector<std::pair<ZZ, int>> factorize(const ZZ &n);

// largest e with p^e | n; n must be nonzero
long valuation(const ZZ &n, const ZZ &p);

bool is_squarefree(const ZZ &n);

// D < 0 (or any D != 0,1): D = 1 mod 4 squarefree, or D = 4m with
// m = 2,3 mod 4 squarefree
bool is_fundamental_discriminant(const ZZ &D);

// all square roots of a modulo p^k, sorted ascending in [0, p^k)
std::vector<ZZ> sqrt_mod_prime_power(const ZZ &a, const ZZ &p, int k);

// smallest nonnegative root of x^2 = a mod m (m >= 1); empty when none
std::optional<ZZ> smallest_sqrt_mod(const ZZ &a, const ZZ &m);

// CRT: the unique x mod m1*m2 with x = r1 mod m1, x = r2 mod m2;
// moduli must be coprime
ZZ crt_pair(const ZZ &r1, const ZZ &m1, const ZZ &r2, const ZZ &m2);

} // namespace forge

#endif
