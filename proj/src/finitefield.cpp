#include "forge/finitefield.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace forge {

Poly<ZZ> pm_norm(const Poly<ZZ> &f, const ZZ &p) {
  std::vector<ZZ> v = f.c;
  for (auto &x : v) x = mod_norm(x, p);
  return Poly<ZZ>(std::move(v));
}

Poly<ZZ> pm_mul(const Poly<ZZ> &a, const Poly<ZZ> &b, const ZZ &p) {
  return pm_norm(a * b, p);
}

Poly<ZZ> pm_monic(const Poly<ZZ> &f, const ZZ &p) {
  Poly<ZZ> g = pm_norm(f, p);
  if (g.is_zero()) return g;
  ZZ inv;
  if (!invmod(g.lead(), p, inv))
    throw std::domain_error("pm_monic: leading coefficient not invertible");
  std::vector<ZZ> v = g.c;
  for (auto &x : v) x = mod_norm(x * inv, p);
  return Poly<ZZ>(std::move(v));
}

void pm_divrem(const Poly<ZZ> &a, const Poly<ZZ> &b, const ZZ &p, Poly<ZZ> &q,
               Poly<ZZ> &r) {
  Poly<ZZ> bb = pm_norm(b, p);
  if (bb.is_zero()) throw std::domain_error("pm_divrem: division by zero");
  ZZ inv;
  if (!invmod(bb.lead(), p, inv))
    throw std::domain_error("pm_divrem: leading coefficient not invertible");
  r = pm_norm(a, p);
  const long db = bb.degree();
  std::vector<ZZ> qc;
  if (r.degree() >= db) qc.assign(static_cast<size_t>(r.degree() - db) + 1, ZZ(0));
  while (!r.is_zero() && r.degree() >= db) {
    long k = r.degree() - db;
    ZZ c = mod_norm(r.lead() * inv, p);
    qc[static_cast<size_t>(k)] = c;
    std::vector<ZZ> v = r.c;
    for (long i = 0; i <= db; ++i)
      v[static_cast<size_t>(i + k)] =
          mod_norm(v[static_cast<size_t>(i + k)] - c * bb.c[static_cast<size_t>(i)], p);
    r = Poly<ZZ>(std::move(v));
  }
  q = Poly<ZZ>(std::move(qc));
}

Poly<ZZ> pm_mod(const Poly<ZZ> &a, const Poly<ZZ> &b, const ZZ &p) {
  Poly<ZZ> q, r;
  pm_divrem(a, b, p, q, r);
  return r;
}

Poly<ZZ> pm_gcd(const Poly<ZZ> &a, const Poly<ZZ> &b, const ZZ &p) {
  Poly<ZZ> x = pm_norm(a, p), y = pm_norm(b, p);
  while (!y.is_zero()) {
    Poly<ZZ> r = pm_mod(x, y, p);
    x = y;
    y = r;
  }
  return x.is_zero() ? x : pm_monic(x, p);
}

Poly<ZZ> pm_mulmod(const Poly<ZZ> &a, const Poly<ZZ> &b, const Poly<ZZ> &f,
                   const ZZ &p) {
  return pm_mod(a * b, f, p);
}

Poly<ZZ> pm_powmod(const Poly<ZZ> &base, const ZZ &e, const Poly<ZZ> &f,
                   const ZZ &p) {
  if (e.sign() < 0) throw std::domain_error("pm_powmod: negative exponent");
  Poly<ZZ> result(ZZ(1));
  Poly<ZZ> b = pm_mod(base, f, p);
  const size_t bits = e.bit_length();
  for (size_t i = bits; i-- > 0;) {
    result = pm_mulmod(result, result, f, p);
    if (mpz_tstbit(e.mpz().get_mpz_t(), i)) result = pm_mulmod(result, b, f, p);
  }
  return result;
}

std::optional<Poly<ZZ>> pm_invmod(const Poly<ZZ> &a, const Poly<ZZ> &m,
                                  const ZZ &p) {
  Poly<ZZ> r0 = pm_norm(m, p), r1 = pm_mod(a, m, p);
  Poly<ZZ> t0, t1(ZZ(1));
  while (!r1.is_zero()) {
    Poly<ZZ> q, r;
    pm_divrem(r0, r1, p, q, r);
    r0 = r1;
    r1 = r;
    Poly<ZZ> t = pm_norm(t0 - q * t1, p);
    t0 = t1;
    t1 = t;
  }
  if (r0.degree() != 0) return std::nullopt;
  ZZ lead_inv;
  if (!invmod(r0.coeff(0), p, lead_inv)) return std::nullopt;
  return pm_mod(t0 * Poly<ZZ>(lead_inv), m, p);
}

namespace {

// p-th root of a polynomial whose derivative vanishes: every exponent is a
// multiple of p and the coefficients are Frobenius-fixed, so dropping the
// exponent factor of p is exact.
Poly<ZZ> pth_root(const Poly<ZZ> &f, const ZZ &p) {
  if (!p.fits_long()) throw std::domain_error("pth_root: modulus too large");
  const long pl = p.to_long();
  std::vector<ZZ> v;
  for (long i = 0; i * pl <= f.degree(); ++i)
    v.push_back(f.coeff(i * pl));
  return Poly<ZZ>(std::move(v));
}

// f = prod g_i^i with the g_i squarefree and pairwise coprime; f monic
void squarefree_parts(const Poly<ZZ> &f, const ZZ &p, long mult_scale,
                      std::vector<std::pair<Poly<ZZ>, long>> &out) {
  Poly<ZZ> df = pm_norm(derivative(f), p);
  if (df.is_zero()) {
    // f is a p-th power (pth_root throws first if p is outsized)
    Poly<ZZ> root = pth_root(f, p);
    squarefree_parts(root, p, mult_scale * p.to_long(), out);
    return;
  }
  Poly<ZZ> c = pm_gcd(f, df, p);
  Poly<ZZ> w, wr;
  pm_divrem(f, c, p, w, wr);
  w = pm_monic(w, p);
  long i = 1;
  while (w.degree() > 0) {
    Poly<ZZ> y = pm_gcd(w, c, p);
    Poly<ZZ> fac, rem;
    pm_divrem(w, y, p, fac, rem);
    if (fac.degree() > 0) out.emplace_back(pm_monic(fac, p), mult_scale * i);
    w = y;
    Poly<ZZ> cq, cr;
    pm_divrem(c, y, p, cq, cr);
    c = cq;
    ++i;
  }
  if (c.degree() > 0) {
    Poly<ZZ> root = pth_root(c, p);
    squarefree_parts(root, p, mult_scale * p.to_long(), out);
  }
}

uint64_t mix_seed(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

uint64_t seed_from(const Poly<ZZ> &f, const ZZ &p) {
  uint64_t h = 0x6a09e667f3bcc909ULL;
  h = mix_seed(h, p.mpz().get_ui());
  for (const auto &c : f.c) h = mix_seed(h, c.mpz().get_ui());
  h = mix_seed(h, static_cast<uint64_t>(f.degree()));
  return h;
}

Poly<ZZ> random_poly(std::mt19937_64 &rng, long deg_below, const ZZ &p) {
  std::vector<ZZ> v;
  for (long i = 0; i < deg_below; ++i) {
    // uniform enough for splitting purposes
    ZZ c = mod_norm(ZZ(static_cast<long>(rng() >> 1)), p);
    v.push_back(c);
  }
  return Poly<ZZ>(std::move(v));
}

// split a monic squarefree product of degree-d irreducibles
void equal_degree_split(const Poly<ZZ> &u, long d, const ZZ &p,
                        std::mt19937_64 &rng, std::vector<Poly<ZZ>> &out) {
  if (u.degree() == d) {
    out.push_back(u);
    return;
  }
  Poly<ZZ> w;
  while (true) {
    Poly<ZZ> r = random_poly(rng, u.degree(), p);
    if (r.degree() < 1) continue;
    Poly<ZZ> t;
    if (p == ZZ(2)) {
      // trace map over F_{2^d}
      t = Poly<ZZ>();
      Poly<ZZ> ri = pm_mod(r, u, p);
      for (long i = 0; i < d; ++i) {
        t = pm_norm(t + ri, p);
        ri = pm_mulmod(ri, ri, u, p);
      }
    } else {
      ZZ e = (pow(p, static_cast<unsigned long>(d)) - ZZ(1)) / ZZ(2);
      t = pm_powmod(r, e, u, p);
      t = pm_norm(t - Poly<ZZ>(ZZ(1)), p);
    }
    w = pm_gcd(t, u, p);
    if (w.degree() > 0 && w.degree() < u.degree()) break;
  }
  Poly<ZZ> q, rem;
  pm_divrem(u, w, p, q, rem);
  equal_degree_split(w, d, p, rng, out);
  equal_degree_split(pm_monic(q, p), d, p, rng, out);
}

}  // namespace

std::vector<PmFactor> pm_factor(const Poly<ZZ> &f, const ZZ &p) {
  if (!is_probable_prime(p)) throw std::domain_error("pm_factor: p not prime");
  Poly<ZZ> g = pm_norm(f, p);
  if (g.is_zero()) throw std::domain_error("pm_factor: zero polynomial");
  std::vector<PmFactor> result;
  if (g.degree() < 1) return result;
  g = pm_monic(g, p);
  std::mt19937_64 rng(seed_from(g, p));

  std::vector<std::pair<Poly<ZZ>, long>> sqf;
  squarefree_parts(g, p, 1, sqf);
  for (auto &[part, mult] : sqf) {
    // distinct-degree split of the squarefree part
    Poly<ZZ> rest = part;
    Poly<ZZ> h = pm_mod(Poly<ZZ>::x(), rest, p);
    long d = 0;
    while (rest.degree() > 0) {
      ++d;
      if (2 * d > rest.degree()) {
        // what is left is a single irreducible factor
        std::vector<Poly<ZZ>> irr{rest};
        for (const auto &w : irr)
          result.push_back({w, static_cast<int>(mult)});
        break;
      }
      h = pm_powmod(h, p, rest, p);
      Poly<ZZ> gd = pm_gcd(pm_norm(h - Poly<ZZ>::x(), p), rest, p);
      if (gd.degree() > 0) {
        std::vector<Poly<ZZ>> irr;
        equal_degree_split(gd, d, p, rng, irr);
        for (const auto &w : irr)
          result.push_back({w, static_cast<int>(mult)});
        Poly<ZZ> q, rem;
        pm_divrem(rest, gd, p, q, rem);
        rest = pm_monic(q, p);
        h = pm_mod(h, rest, p);
      }
    }
  }

  std::sort(result.begin(), result.end(),
            [](const PmFactor &a, const PmFactor &b) {
              if (a.factor.degree() != b.factor.degree())
                return a.factor.degree() < b.factor.degree();
              for (long i = a.factor.degree(); i >= 0; --i) {
                if (a.factor.coeff(i) != b.factor.coeff(i))
                  return a.factor.coeff(i) < b.factor.coeff(i);
              }
              return a.multiplicity < b.multiplicity;
            });
  return result;
}

bool pm_is_irreducible(const Poly<ZZ> &f, const ZZ &p) {
  Poly<ZZ> g = pm_monic(f, p);
  const long n = g.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  // Rabin's test: x^(p^n) = x mod g, and x^(p^(n/t)) - x is coprime to g for
  // every prime t dividing n.
  Poly<ZZ> x = Poly<ZZ>::x();
  Poly<ZZ> h = pm_mod(x, g, p);
  std::vector<long> prime_divs;
  long m = n;
  for (long t = 2; t * t <= m; ++t)
    if (m % t == 0) {
      prime_divs.push_back(t);
      while (m % t == 0) m /= t;
    }
  if (m > 1) prime_divs.push_back(m);

  // iterate Frobenius one step at a time, checking at the n/t marks
  std::vector<Poly<ZZ>> frob(static_cast<size_t>(n) + 1);
  frob[0] = h;
  for (long i = 1; i <= n; ++i) frob[static_cast<size_t>(i)] = pm_powmod(frob[static_cast<size_t>(i - 1)], p, g, p);
  if (pm_norm(frob[static_cast<size_t>(n)] - x, p) != Poly<ZZ>()) return false;
  for (long t : prime_divs) {
    Poly<ZZ> diff = pm_norm(frob[static_cast<size_t>(n / t)] - x, p);
    if (pm_gcd(diff, g, p).degree() != 0) return false;
  }
  return true;
}

std::vector<ZZ> pm_roots(const Poly<ZZ> &f, const ZZ &p) {
  std::vector<ZZ> roots;
  for (const auto &[factor, mult] : pm_factor(f, p)) {
    (void)mult;
    if (factor.degree() == 1) roots.push_back(mod_norm(-factor.coeff(0), p));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::optional<ZZ> sqrt_mod(const ZZ &a, const ZZ &p) {
  ZZ x = mod_norm(a, p);
  if (p == ZZ(2)) return x;
  if (x.is_zero()) return ZZ(0);
  if (kronecker(x, p) != 1) return std::nullopt;
  ZZ r;
  if (fdiv_r(p, ZZ(4)) == ZZ(3)) {
    r = powmod(x, (p + ZZ(1)) / ZZ(4), p);
  } else {
    // Tonelli-Shanks
    ZZ q = p - ZZ(1);
    long s = 0;
    while (!q.is_odd()) {
      q = q / ZZ(2);
      ++s;
    }
    ZZ z(2);
    while (kronecker(z, p) != -1) z += ZZ(1);
    ZZ m(s), c = powmod(z, q, p), t = powmod(x, q, p);
    r = powmod(x, (q + ZZ(1)) / ZZ(2), p);
    while (t != ZZ(1)) {
      ZZ tt = t;
      long i = 0;
      while (tt != ZZ(1)) {
        tt = mod_norm(tt * tt, p);
        ++i;
      }
      ZZ b = c;
      for (long j = 0; j + i + 1 < m.to_long(); ++j) b = mod_norm(b * b, p);
      m = ZZ(i);
      c = mod_norm(b * b, p);
      t = mod_norm(t * c, p);
      r = mod_norm(r * b, p);
    }
  }
  ZZ other = mod_norm(-r, p);
  return std::min(r, other);
}

}  // namespace forge
