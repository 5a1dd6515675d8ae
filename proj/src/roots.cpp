#include "forge/roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace forge {

namespace {

CC horner(const std::vector<CC> &c, const CC &x) {
  CC r(x.digits());
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

std::vector<CC> raise(const std::vector<CC> &c, long digits) {
  std::vector<CC> r;
  r.reserve(c.size());
  for (const auto &z : c)
    r.push_back(CC(with_digits(z.re, digits), with_digits(z.im, digits)));
  return r;
}

// One full Aberth pass at fixed precision; returns true when every correction
// is below tol relative to max(1, |z_i|).
bool aberth_converge(std::vector<CC> &z, const std::vector<CC> &c,
                     const std::vector<CC> &dc, const BigFloat &tol,
                     long max_iter) {
  const size_t n = z.size();
  const long digits = z.empty() ? 40 : z[0].digits();
  BigFloat one(1.0, digits);
  for (long iter = 0; iter < max_iter; iter++) {
    bool done = true;
    for (size_t i = 0; i < n; i++) {
      CC fv = horner(c, z[i]);
      CC dv = horner(dc, z[i]);
      if (dv.is_zero()) {
        // sitting on a critical point: nudge
        z[i] = z[i] + CC(tol, tol);
        done = false;
        continue;
      }
      CC newton = fv / dv;
      CC s(digits);
      for (size_t j = 0; j < n; j++) {
        if (j == i) continue;
        CC d = z[i] - z[j];
        if (d.is_zero()) d = CC(tol, -tol); // coincident guesses
        s += inverse(d);
      }
      CC denom = CC(one, BigFloat(0.0, digits)) - newton * s;
      CC w = denom.is_zero() ? newton : newton / denom;
      z[i] = z[i] - w;
      BigFloat scale = abs(z[i]);
      if (scale < one) scale = one;
      if (!(abs(w) <= tol * scale)) done = false;
    }
    if (done) return true;
  }
  return false;
}

} // namespace

std::vector<CC> complex_roots(const std::vector<CC> &coeffs, long digits) {
  std::vector<CC> c = coeffs;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.size() <= 1) return {};
  const size_t n = c.size() - 1;

  long work = digits + 15;
  for (int attempt = 0; attempt < 8; attempt++, work *= 2) {
    std::vector<CC> cw = raise(c, work);
    std::vector<CC> dcw(n);
    for (size_t i = 1; i < cw.size(); i++) dcw[i - 1] = cw[i] * BigFloat(ZZ((long)i), work);

    // Cauchy bound radius, guesses on a slightly irrational spiral so no two
    // start symmetric about the real axis
    BigFloat r(1.0, work);
    BigFloat lead = abs(cw.back());
    for (size_t i = 0; i < n; i++) {
      BigFloat t = abs(cw[i]) / lead;
      if (t > r) r = t;
    }
    r = r + BigFloat(1.0, work);
    BigFloat pi = bf_pi(work);
    std::vector<CC> z(n);
    for (size_t i = 0; i < n; i++) {
      BigFloat theta =
          pi * BigFloat(2.0 * (double)i / (double)n + 0.3731 + 0.11 * attempt,
                        work);
      z[i] = CC(r * cos(theta), r * sin(theta));
    }

    BigFloat tol(1.0, work);
    {
      // 10^-(digits+5)
      BigFloat ten(10.0, work);
      tol = pow_si(ten, -(digits + 5));
    }
    if (aberth_converge(z, cw, dcw, tol, 60 + 40 * (long)n)) {
      std::vector<CC> out;
      out.reserve(n);
      for (auto &zi : z)
        out.push_back(
            CC(with_digits(zi.re, digits), with_digits(zi.im, digits)));
      // deterministic order: by real part, then imaginary part
      std::sort(out.begin(), out.end(), [](const CC &a, const CC &b) {
        int cr = a.re.cmp(b.re);
        if (cr != 0) return cr < 0;
        return a.im.cmp(b.im) < 0;
      });
      return out;
    }
  }
  throw std::runtime_error("complex_roots: no convergence (multiple roots?)");
}

std::vector<CC> complex_roots(const Poly<QQ> &f, long digits) {
  std::vector<CC> c;
  c.reserve(f.c.size());
  long work = digits + 15;
  for (const auto &q : f.c) c.push_back(from_QQ(q, work));
  return complex_roots(c, digits);
}

} // namespace forge
