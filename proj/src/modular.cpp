// Fourier coefficients through point counts and Hecke recursions, the
// parametrization series with a proved tail cutoff, AGM period lattices
// certified by theta constants, Weierstrass uniformization by Laurent
// series plus group-law doublings, and CM conjugate orbits.

#include "forge/modular.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>

#include "forge/minimal.hpp"
#include "forge/roots.hpp"

namespace forge {

namespace {

// ---------------------------------------------------------------------------
// precision plumbing: binary operations work at the smaller operand
// precision, so inputs are raised to the working precision on entry

BigFloat at_digits(const BigFloat &x, long digits) {
  BigFloat r(digits);
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

CC at_digits(const CC &z, long digits) {
  return CC(at_digits(z.re, digits), at_digits(z.im, digits));
}

BigFloat bf_max(const BigFloat &a, const BigFloat &b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// Fourier layer

std::vector<int32_t> spf_sieve(long M) {
  std::vector<int32_t> spf(M + 1, 0);
  for (long i = 2; i <= M; ++i)
    if (spf[i] == 0)
      for (long j = i; j <= M; j += i)
        if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
  return spf;
}

void require_minimal(const ECurveQ &E, const char *who) {
  QOps F;
  ECurveQ Emin = minimal_model(E);  // also rejects singular input
  QQ d = ec_invariants(F, E).disc;
  QQ dmin = ec_invariants(F, Emin).disc;
  for (const QQ *c : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
    if (!(c->den() == ZZ(1)))
      throw std::invalid_argument(std::string(who) +
                                  ": coefficients must be integers");
  if (!(d == dmin))
    throw std::invalid_argument(std::string(who) +
                                ": curve must be a global minimal model");
}

// prime trace at an odd prime of good reduction through the quadratic
// character: completing the square turns the affine count into
// q + sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6), so a_q is minus that sum
long trace_by_character(const ZZ &b2, const ZZ &b4, const ZZ &b6, long q) {
  std::vector<int8_t> chi(q, -1);
  chi[0] = 0;
  for (long t = 1; t <= (q - 1) / 2; ++t) chi[(t * t) % q] = 1;
  const long c2 = fdiv_r(b2, ZZ(q)).to_long();
  const long c4 = fdiv_r(ZZ(2) * b4, ZZ(q)).to_long();
  const long c6 = fdiv_r(b6, ZZ(q)).to_long();
  long s = 0;
  for (long x = 0; x < q; ++x) {
    long v = (((4 * x + c2) % q) * x + c4) % q;
    v = (v * x + c6) % q;
    s += chi[v];
  }
  return -s;
}

// extend the coefficient list of C up to M, reusing whatever prime values
// are already present
void fill_coefficients(FourierCache &C, long M) {
  const long M0 = C.M();
  if (M <= M0) return;
  if (M > 30000000)
    throw std::invalid_argument("fourier_coefficients: range too large");
  C.a.resize(M + 1, 0);
  C.a[1] = 1;
  QOps F;
  auto I = ec_invariants(F, C.curve);
  const ZZ dz = I.disc.num();
  const ZZ b2 = I.b2.num(), b4 = I.b4.num(), b6 = I.b6.num();
  const std::vector<int32_t> spf = spf_sieve(M);
  for (long q = 2; q <= M; ++q) {
    if (spf[q] != q) continue;
    long aq;
    if (q <= M0)
      aq = C.a[q];
    else if (q > 2 && q < 10000 && !divides(ZZ(q), dz))
      aq = trace_by_character(b2, b4, b6, q);
    else
      aq = trace_of_frobenius(C.curve, ZZ(q)).to_long();
    C.a[q] = aq;
    const long eps = divides(ZZ(q), dz) ? 0 : 1;
    long prev = 1, cur = aq;
    for (long qk = q; qk <= M / q;) {
      qk *= q;
      long nxt = aq * cur - eps * q * prev;
      C.a[qk] = nxt;
      prev = cur;
      cur = nxt;
    }
  }
  for (long n = 2; n <= M; ++n) {
    const long q = spf[n];
    long pe = 1, m = n;
    while (m % q == 0) {
      m /= q;
      pe *= q;
    }
    if (m == 1) continue;  // prime power, already set
    C.a[n] = C.a[pe] * C.a[m];
  }
}

std::string zstr(const ZZ &z) { return z.mpz().get_str(); }

std::string curve_key(const ECurveQ &E) {
  std::ostringstream os;
  os << "curve=" << zstr(E.a1.num()) << "," << zstr(E.a2.num()) << ","
     << zstr(E.a3.num()) << "," << zstr(E.a4.num()) << ","
     << zstr(E.a6.num());
  return os.str();
}

}  // namespace

FourierCache fourier_coefficients(const ECurveQ &E, long M) {
  if (M < 1)
    throw std::invalid_argument("fourier_coefficients: need M >= 1");
  require_minimal(E, "fourier_coefficients");
  FourierCache C;
  C.curve = E;
  C.a = {0, 1};
  fill_coefficients(C, M);
  return C;
}

void save_fourier_cache(const FourierCache &F, const std::string &path) {
  std::ofstream out(path, std::ios::app);
  if (!out)
    throw std::runtime_error("save_fourier_cache: cannot open " + path);
  out << curve_key(F.curve) << " M=" << F.M() << "\n";
  for (long n = 1; n <= F.M(); ++n) out << n << " " << F.a[n] << "\n";
  out.flush();
  if (!out)
    throw std::runtime_error("save_fourier_cache: write failed: " + path);
}

FourierCache fourier_coefficients(const ECurveQ &E, long M,
                                  const std::string &path) {
  if (M < 1)
    throw std::invalid_argument("fourier_coefficients: need M >= 1");
  require_minimal(E, "fourier_coefficients");
  const std::string key = curve_key(E);

  FourierCache C;
  C.curve = E;
  C.a = {0, 1};
  std::ifstream in(path);
  if (in) {
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream hs(line);
      std::string ck, ms;
      if (!(hs >> ck >> ms)) continue;
      if (ck.rfind("curve=", 0) != 0 || ms.rfind("M=", 0) != 0)
        throw std::runtime_error("fourier cache corrupt header: " + path);
      long bm = std::stol(ms.substr(2));
      std::vector<long> blk(bm + 1, 0);
      for (long i = 1; i <= bm; ++i) {
        long n = 0, an = 0;
        if (!(in >> n >> an) || n != i)
          throw std::runtime_error("fourier cache corrupt block: " + path);
        blk[i] = an;
      }
      std::getline(in, line);  // finish the block's last line
      if (bm >= 1 && blk[1] != 1)
        throw std::runtime_error("fourier cache corrupt block: " + path);
      if (ck == key && bm > C.M()) C.a = std::move(blk);
    }
  }
  const long had = C.M();
  fill_coefficients(C, M);
  if (C.M() > had) save_fourier_cache(C, path);
  return C;
}

// ---------------------------------------------------------------------------
// the parametrization series

namespace {

// tail of sum |a_n|/n |q|^n past M, with |a_n| <= n^{3/2}:
// sqrt(M+1) r^{M+1} / (1-r)^2
BigFloat phi_tail(const BigFloat &r, long M, long wd) {
  BigFloat num = sqrt(BigFloat(ZZ(M + 1), wd)) * pow_si(r, M + 1);
  BigFloat d = BigFloat(ZZ(1), wd) - r;
  return num / (d * d);
}

}  // namespace

CC phi_series(const FourierCache &F, const CC &tau0, long digits) {
  if (digits < 1) throw std::invalid_argument("phi_series: need digits >= 1");
  const long wd = digits + 10;
  const CC tau = at_digits(tau0, wd);
  if (!(tau.im > BigFloat(ZZ(0), wd)))
    throw std::invalid_argument("phi_series: need Im tau > 0");

  const BigFloat two_pi = bf_pi(wd) * BigFloat(ZZ(2), wd);
  const BigFloat r = exp(-(two_pi * tau.im));
  const BigFloat tol = pow_si(BigFloat(10.0, wd), -digits);
  if (!(phi_tail(r, F.M(), wd) < tol)) {
    long lo = F.M(), hi = std::max(2 * F.M(), 64L);
    while (!(phi_tail(r, hi, wd) < tol)) {
      hi *= 2;
      if (hi > (1L << 40))
        throw std::runtime_error("phi_series: accuracy unreachable");
    }
    while (lo + 1 < hi) {
      long mid = lo + (hi - lo) / 2;
      if (phi_tail(r, mid, wd) < tol)
        hi = mid;
      else
        lo = mid;
    }
    throw InsufficientTerms(
        "phi_series: have " + std::to_string(F.M()) + " coefficients, need " +
            std::to_string(hi) + " for " + std::to_string(digits) + " digits",
        hi);
  }
  long Msum = F.M();
  while (Msum > 16 && phi_tail(r, Msum / 2, wd) < tol) Msum /= 2;

  const CC w = exp(CC(-(two_pi * tau.im), two_pi * tau.re));
  CC wn(BigFloat(ZZ(1), wd), BigFloat(wd));
  CC S(wd);
  for (long n = 1; n <= Msum; ++n) {
    wn *= w;
    if (F.a[n] == 0) continue;
    S += wn * BigFloat(QQ(F.a[n], n), wd);
  }
  return S;
}

// ---------------------------------------------------------------------------
// period lattices

namespace {

// optimal-branch arithmetic-geometric mean: the geometric step keeps the
// sign with |a' - b'| <= |a' + b'|, ties broken toward Im(b'/a') > 0
CC agm_optimal(CC a, CC b, long wd) {
  const BigFloat eps = pow_si(BigFloat(10.0, wd), -(wd - 2));
  for (int it = 0; it < 400; ++it) {
    if (abs(a - b) <= eps * abs(a)) return a;
    CC am = (a + b) * BigFloat(QQ(1, 2), wd);
    CC gm = sqrt(a * b);
    const BigFloat d1 = abs(am - gm), d2 = abs(am + gm);
    if (d1 > d2)
      gm = -gm;
    else if (d2 - d1 <= eps * (d1 + d2) && (gm / am).im < BigFloat(wd))
      gm = -gm;
    a = am;
    b = gm;
  }
  throw std::runtime_error("agm_optimal: no convergence");
}

// basis reduction leaving the lattice unchanged: |Re(w1/w2)| <= 1/2,
// |w1| >= |w2|, Im(w1/w2) > 0
void gauss_reduce(CC &w1, CC &w2, long wd) {
  for (int it = 0; it < 200; ++it) {
    CC t = w1 / w2;
    ZZ k = round_to_ZZ(t.re);
    if (!k.is_zero()) w1 -= w2 * BigFloat(k, wd);
    if (norm2(w1) < norm2(w2))
      std::swap(w1, w2);
    else
      break;
  }
  if ((w1 / w2).im < BigFloat(wd)) w1 = -w1;
}

// theta nullwerte at the nome of tau = w1/w2 reconstruct the half-period
// values e1, e2, e3; the basis is certified when those match the roots of
// the cubic as a set
bool theta_certified(CC w1, CC w2, const std::vector<CC> &rts, long wd) {
  gauss_reduce(w1, w2, wd);
  const CC tau = w1 / w2;
  const BigFloat pi = bf_pi(wd);
  const CC q = exp(cc_i(wd) * pi * tau);
  if (!(abs(q) < BigFloat(0.5, wd))) return false;  // reduction failed
  const CC one(BigFloat(ZZ(1), wd), BigFloat(wd));
  const BigFloat cut = pow_si(BigFloat(10.0, wd), -(wd + 5));

  const CC qsq = q * q;
  CC t3 = one, t4 = one;
  CC qk = one, q2k1 = q;
  for (long k = 1; k <= 100000; ++k) {
    qk *= q2k1;  // q^{k^2}
    q2k1 *= qsq;
    t3 += qk + qk;
    if (k % 2 == 1)
      t4 -= qk + qk;
    else
      t4 += qk + qk;
    if (abs(qk) < cut) break;
  }
  CC s2(wd);
  CC qkk = one, qstep = qsq;  // q^{k(k+1)} and the ratio q^{2(k+1)}
  for (long k = 0; k <= 100000; ++k) {
    s2 += qkk;
    if (abs(qkk) < cut) break;
    qkk *= qstep;
    qstep *= qsq;
  }
  const CC t2 = exp(cc_i(wd) * (pi * BigFloat(QQ(1, 4), wd)) * tau) * s2 *
                BigFloat(ZZ(2), wd);

  const CC pw = pow_ui(CC(pi, BigFloat(wd)) / w2, 2);
  const CC t24 = pow_ui(t2, 4), t34 = pow_ui(t3, 4), t44 = pow_ui(t4, 4);
  const BigFloat third(QQ(1, 3), wd);
  const std::array<CC, 3> es = {pw * (t34 + t44) * third,
                                pw * (t24 - t44) * third,
                                -(pw * (t24 + t34) * third)};

  const BigFloat tol = pow_si(BigFloat(10.0, wd), -(wd - 15));
  std::array<bool, 3> used = {false, false, false};
  for (const CC &e : es) {
    bool hit = false;
    for (int j = 0; j < 3 && !hit; ++j) {
      if (used[j]) continue;
      if (abs(e - rts[j]) < tol * bf_max(BigFloat(ZZ(1), wd), abs(rts[j]))) {
        used[j] = true;
        hit = true;
      }
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

PeriodData period_lattice(const ZZ &A, const ZZ &B, long digits) {
  if (digits < 5)
    throw std::invalid_argument("period_lattice: need digits >= 5");
  const long wd = digits + 20;
  if ((ZZ(4) * A * A * A + ZZ(27) * B * B).is_zero())
    throw std::invalid_argument("period_lattice: singular cubic");

  Poly<QQ> f(std::vector<QQ>{QQ(B), QQ(A), QQ(0), QQ(1)});
  std::vector<CC> rts = complex_roots(f, wd);
  // put real roots first in descending order, then the upper-half one, so
  // the classical ordering comes up first and keeps w2 on the real axis
  const BigFloat rtol = pow_si(BigFloat(10.0, wd), -(wd - 12));
  auto is_real = [&](const CC &z) {
    return abs(z.im) < rtol * bf_max(BigFloat(ZZ(1), wd), abs(z));
  };
  std::sort(rts.begin(), rts.end(), [&](const CC &a, const CC &b) {
    bool ra = is_real(a), rb = is_real(b);
    if (ra != rb) return ra;
    if (ra) return b.re < a.re;
    return b.im < a.im;
  });

  const BigFloat pi = bf_pi(wd);
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto &p : perms) {
    const CC &e1 = rts[p[0]], &e2 = rts[p[1]], &e3 = rts[p[2]];
    CC m1, m2;
    try {
      m1 = agm_optimal(sqrt(e1 - e3), sqrt(e1 - e2), wd);
      m2 = agm_optimal(sqrt(e1 - e3), sqrt(e2 - e3), wd);
    } catch (const std::runtime_error &) {
      continue;
    }
    if (abs(m1) < rtol || abs(m2) < rtol) continue;
    CC w2 = CC(pi, BigFloat(wd)) / m1;
    CC w1 = CC(BigFloat(wd), pi) / m2;
    CC tau = w1 / w2;
    if (abs(tau.im) < rtol) continue;
    if (tau.im < BigFloat(wd)) w1 = -w1;
    if (!theta_certified(w1, w2, rts, wd)) continue;
    PeriodData L;
    L.w1 = w1;
    L.w2 = w2;
    L.roots = {e1, e2, e3};
    return L;
  }
  throw std::runtime_error("period_lattice: no certified basis found");
}

// ---------------------------------------------------------------------------
// uniformization

CC reduce_mod_lattice(const CC &z, const CC &w1, const CC &w2) {
  const long wd = std::max({z.digits(), w1.digits(), w2.digits()});
  const CC zz = at_digits(z, wd), v1 = at_digits(w1, wd),
           v2 = at_digits(w2, wd);
  const BigFloat det = v1.re * v2.im - v2.re * v1.im;
  if (abs(det) <
      pow_si(BigFloat(10.0, wd), -(wd - 8)) * abs(v1) * abs(v2))
    throw std::invalid_argument("reduce_mod_lattice: degenerate basis");
  const BigFloat m = (zz.re * v2.im - v2.re * zz.im) / det;
  const BigFloat n = (v1.re * zz.im - zz.re * v1.im) / det;
  return zz - v1 * BigFloat(round_to_ZZ(m), wd) -
         v2 * BigFloat(round_to_ZZ(n), wd);
}

CPoint uniformize(const PeriodData &L, const ZZ &A, const ZZ &B, const CC &z0,
                  long digits) {
  if (digits < 5)
    throw std::invalid_argument("uniformize: need digits >= 5");
  const long wd = digits + 15;
  CC r1 = at_digits(L.w1, wd), r2 = at_digits(L.w2, wd);
  gauss_reduce(r1, r2, wd);
  const BigFloat lam = abs(r2);  // shortest nonzero lattice vector

  CC z = reduce_mod_lattice(at_digits(z0, wd), r1, r2);
  if (abs(z) < lam * pow_si(BigFloat(10.0, wd), -digits))
    return CPoint{true, CC(wd), CC(wd)};

  long halvings = 0;
  const BigFloat limit = lam * BigFloat(QQ(3, 20), wd);
  const BigFloat half(QQ(1, 2), wd);
  while (abs(z) > limit) {
    z = z * half;
    if (++halvings > 64)
      throw std::logic_error("uniformize: argument will not shrink");
  }

  // Laurent coefficients of wp: c1 = g2/20, c2 = g3/28, and
  // c_k = 3/((2k+3)(k-2)) sum_{m=1}^{k-2} c_m c_{k-1-m} with g2 = -4A,
  // g3 = -4B
  const long NC = wd + 24;
  std::vector<CC> c(NC + 1, CC(wd));
  c[1] = from_QQ(QQ(-A, ZZ(5)), wd);
  c[2] = from_QQ(QQ(-B, ZZ(7)), wd);
  for (long k = 3; k <= NC; ++k) {
    CC s(wd);
    for (long m = 1; m <= k - 2; ++m) s += c[m] * c[k - 1 - m];
    c[k] = s * BigFloat(QQ(3, (2 * k + 3) * (k - 2)), wd);
  }

  const CC z2 = z * z;
  CC wp = inverse(z2);
  CC wpd = inverse(z2 * z) * BigFloat(ZZ(-2), wd);
  CC zeven = z2;       // z^{2k}
  CC zodd = z;         // z^{2k-1}
  for (long k = 1; k <= NC; ++k) {
    wp += c[k] * zeven;
    wpd += c[k] * zodd * BigFloat(ZZ(2 * k), wd);
    zodd = zeven * z;
    zeven = zeven * z2;
  }

  CCOps F(wd);
  ECurve<CC> Ecc{CC(wd), CC(wd), CC(wd), from_QQ(QQ(A), wd),
                 from_QQ(QQ(B), wd)};
  EPt<CC> P = EPt<CC>::xy(wp, wpd * half);
  for (long i = 0; i < halvings; ++i) P = ec_add(F, Ecc, P, P);
  if (P.at_infinity) return CPoint{true, CC(wd), CC(wd)};
  return CPoint{false, P.x, P.y};
}

// ---------------------------------------------------------------------------
// conjugate orbits and model plumbing

ConjugateOrbit conjugate_orbit(const TauOrbit &orb, const FourierCache &F,
                               long digits) {
  const long p = static_cast<long>(orb.taus.size());
  if (p < 3 || p % 2 == 0 || !is_probable_prime(ZZ(p)))
    throw std::invalid_argument(
        "conjugate_orbit: orbit size must be an odd prime");
  ConjugateOrbit O;
  for (long i = 0; i < p; ++i) {
    O.z.push_back(phi_series(F, orb.taus[i], digits));
    O.labels.push_back(OrbitLabel{false, static_cast<int>(i)});
  }
  for (long i = 0; i < p; ++i) {
    O.z.push_back(conj(O.z[i]));
    O.labels.push_back(OrbitLabel{true, static_cast<int>(i)});
  }
  return O;
}

ECurveQ short_model(const ECurveQ &E) {
  QOps F;
  auto I = ec_invariants(F, E);
  return ECurveQ{QQ(0), QQ(0), QQ(0), QQ(-27) * I.c4, QQ(-54) * I.c6};
}

CPoint short_to_curve(const ECurveQ &E, const CPoint &P, long digits) {
  if (P.at_infinity) return P;
  QOps F;
  auto I = ec_invariants(F, E);
  const CC X = at_digits(P.x, digits), Y = at_digits(P.y, digits);
  const CC x = (X - from_QQ(QQ(3) * I.b2, digits)) / BigFloat(ZZ(36), digits);
  const CC y = (Y / BigFloat(ZZ(108), digits) - from_QQ(E.a1, digits) * x -
                from_QQ(E.a3, digits)) /
               BigFloat(ZZ(2), digits);
  return CPoint{false, x, y};
}

}  // namespace forge
