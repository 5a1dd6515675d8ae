#include "forge/zarith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "forge/finitefield.hpp"

namespace forge {

namespace {

// Brent's cycle variant of Pollard rho; n odd composite. Returns a
// nontrivial factor. Retries with a fresh polynomial constant on the rare
// degenerate cycle.
ZZ brent_rho(const ZZ &n) {
  if (n.is_even()) return ZZ(2);
  for (long c = 1;; c++) {
    auto step = [&](const ZZ &v) { return fdiv_r(v * v + ZZ(c), n); };
    ZZ y(2), g(1), q(1), x(0), ys(0);
    long r = 1;
    const long m = 128;
    while (g.is_one()) {
      x = y;
      for (long i = 0; i < r; i++) y = step(y);
      long k = 0;
      while (k < r && g.is_one()) {
        ys = y;
        long lim = std::min(m, r - k);
        for (long i = 0; i < lim; i++) {
          y = step(y);
          q = fdiv_r(q * abs(x - y), n);
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      g = ZZ(1);
      while (g.is_one()) {
        ys = step(ys);
        g = gcd(abs(x - ys), n);
      }
    }
    if (g != n) return g;
  }
}

void factor_rec(const ZZ &n, std::map<ZZ, int> &out) {
  if (n.is_one()) return;
  if (is_probable_prime(n)) {
    out[n]++;
    return;
  }
  ZZ d = brent_rho(n);
  factor_rec(d, out);
  factor_rec(divexact(n, d), out);
}

} // namespace

std::vector<std::pair<ZZ, int>> factorize(const ZZ &n) {
  if (n.is_zero()) throw std::domain_error("factorize: zero input");
  ZZ m = abs(n);
  std::map<ZZ, int> acc;
  for (long p = 2; p < 100000 && ZZ(p * p) <= m; p += (p == 2 ? 1 : 2)) {
    ZZ zp(p);
    while (divides(zp, m)) {
      acc[zp]++;
      m = divexact(m, zp);
    }
  }
  if (!m.is_one()) factor_rec(m, acc);
  return std::vector<std::pair<ZZ, int>>(acc.begin(), acc.end());
}

long valuation(const ZZ &n, const ZZ &p) {
  if (n.is_zero()) throw std::domain_error("valuation: zero input");
  if (p <= ZZ(1)) throw std::domain_error("valuation: p must exceed 1");
  long v = 0;
  ZZ m = abs(n);
  while (divides(p, m)) {
    m = divexact(m, p);
    v++;
  }
  return v;
}

bool is_squarefree(const ZZ &n) {
  if (n.is_zero()) return false;
  for (const auto &[p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

bool is_fundamental_discriminant(const ZZ &D) {
  if (D.is_zero() || D.is_one()) return false;
  long r = fdiv_r(D, ZZ(4)).to_long();
  if (r == 1) return is_squarefree(D);
  if (r != 0) return false;
  ZZ m = divexact(D, ZZ(4));
  long rm = fdiv_r(m, ZZ(4)).to_long();
  if (rm != 2 && rm != 3) return false;
  return is_squarefree(m);
}

std::vector<ZZ> sqrt_mod_prime_power(const ZZ &a, const ZZ &p, int k) {
  if (k < 1) throw std::domain_error("sqrt_mod_prime_power: k must be positive");
  if (!is_probable_prime(p))
    throw std::domain_error("sqrt_mod_prime_power: p not prime");
  ZZ m = pow(p, (unsigned long)k);
  ZZ a0 = fdiv_r(a, m);
  std::vector<ZZ> roots;
  // small moduli (and every 2-power case that occurs here): direct scan
  if (m <= ZZ(1 << 13)) {
    for (ZZ r(0); r < m; r += ZZ(1))
      if (fdiv_r(r * r, m) == a0) roots.push_back(r);
    return roots;
  }
  if (p == ZZ(2))
    throw std::domain_error("sqrt_mod_prime_power: 2-power modulus too large");
  ZZ ap = fdiv_r(a0, p);
  if (ap.is_zero()) {
    if (a0.is_zero()) {
      // roots are the multiples of p^ceil(k/2)
      ZZ ph = pow(p, (unsigned long)((k + 1) / 2));
      for (ZZ t(0); t * ph < m; t += ZZ(1)) roots.push_back(t * ph);
      return roots;
    }
    throw std::domain_error("sqrt_mod_prime_power: p | a unsupported");
  }
  auto r0 = sqrt_mod(ap, p);
  if (!r0) return roots;
  // Hensel: r <- r - (r^2 - a) / (2r) mod p^(2^j)
  ZZ r = *r0, mod = p;
  while (mod < m) {
    mod = mod * mod;
    if (mod > m) mod = m;
    ZZ inv2r;
    if (!invmod(r + r, mod, inv2r))
      throw std::runtime_error("sqrt_mod_prime_power: lift failed");
    r = fdiv_r(r - (r * r - a0) * inv2r, mod);
  }
  roots.push_back(r);
  if (m - r != r) roots.push_back(m - r);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::optional<ZZ> smallest_sqrt_mod(const ZZ &a, const ZZ &m) {
  if (m.sign() <= 0)
    throw std::domain_error("smallest_sqrt_mod: modulus must be positive");
  if (m.is_one()) return ZZ(0);
  std::vector<ZZ> cur{ZZ(0)};
  ZZ cmod(1);
  for (const auto &[p, e] : factorize(m)) {
    ZZ pe = pow(p, (unsigned long)e);
    auto local = sqrt_mod_prime_power(a, p, e);
    if (local.empty()) return std::nullopt;
    std::vector<ZZ> next;
    next.reserve(cur.size() * local.size());
    for (const auto &x : cur)
      for (const auto &y : local) next.push_back(crt_pair(x, cmod, y, pe));
    if (next.size() > 100000)
      throw std::runtime_error("smallest_sqrt_mod: too many residue branches");
    cur = std::move(next);
    cmod *= pe;
  }
  return *std::min_element(cur.begin(), cur.end());
}

ZZ crt_pair(const ZZ &r1, const ZZ &m1, const ZZ &r2, const ZZ &m2) {
  ZZ inv;
  if (!invmod(m1, m2, inv)) throw std::domain_error("crt_pair: moduli not coprime");
  ZZ t = fdiv_r((r2 - r1) * inv, m2);
  return fdiv_r(r1 + t * m1, m1 * m2);
}

} // namespace forge
