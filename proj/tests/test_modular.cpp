// Tests for the analytic layer.  Fourier coefficients are checked against
// frozen values from an independent character-sum point counter, the
// parametrization series and the period lattices against constants frozen
// from quadrature and complete elliptic integrals, and the uniformization
// against the group law and a known rational point.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "forge/classgroup.hpp"
#include "forge/elliptic.hpp"
#include "forge/minimal.hpp"
#include "forge/modular.hpp"

using namespace forge;

namespace {

const ECurveQ E37 = ecq(0, 0, 1, -1, 0);          // conductor 37, rank one
const ECurveQ E681 = ecq(1, 1, 0, -1154, -15345);  // conductor 681
const ECurveQ E3364 =
    ecq(0, 0, 0, -4062871, -3152083138);  // conductor 3364, negative disc

BigFloat bf(const char *s, long d) { return BigFloat(s, d); }

bool close(const CC &a, const CC &b, const char *tol) {
  long d = std::max(a.digits(), b.digits());
  return abs(a - b) < BigFloat(tol, d);
}

// relative residual of y^2 = x^3 + A x + B at P
BigFloat curve_residual(const ZZ &A, const ZZ &B, const CPoint &P) {
  long d = P.x.digits();
  CC Ac = from_QQ(QQ(A), d), Bc = from_QQ(QQ(B), d);
  BigFloat num = abs(P.y * P.y - ((P.x * P.x + Ac) * P.x + Bc));
  BigFloat scale = abs(P.x * P.x * P.x) + abs(Bc) + BigFloat(1.0, d);
  return num / scale;
}

// minimal-model period lattice: six times the short-model lattice
std::pair<CC, CC> min_lattice(const ECurveQ &E, long d) {
  ECurveQ S = short_model(E);
  PeriodData L = period_lattice(S.a4.num(), S.a6.num(), d);
  BigFloat six(ZZ(6), d + 20);
  return {L.w1 * six, L.w2 * six};
}

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("fourier coefficients match independent point counts") {
  auto F = fourier_coefficients(E37, 40);
  const std::vector<long> w37 = {1,  -2, -3, 2, -2, 6,  -1, 0,  6,  4,
                                 -5, -6, -2, 2, 6,  -4, 0,  -12, 0, -4,
                                 3,  10, 2,  0, -1, 4,  -9, -2, 6,  -12};
  for (size_t i = 0; i < w37.size(); ++i) CHECK(F.a[i + 1] == w37[i]);

  auto G = fourier_coefficients(E681, 20);
  const std::vector<long> w681 = {1, 1, -1, -1, 2,  -1, 0, -3, 1, 2,
                                  4, 1, -2, 0,  -2, -1, 6, 1,  4, -2};
  for (size_t i = 0; i < w681.size(); ++i) CHECK(G.a[i + 1] == w681[i]);

  auto H = fourier_coefficients(E3364, 60);
  const std::vector<long> w3364 = {1, 0, 3, 0, 3, 0, 4,  0, 6, 0,
                                   1, 0, -3, 0, 9, 0, -2, 0, -4, 0};
  for (size_t i = 0; i < w3364.size(); ++i) CHECK(H.a[i + 1] == w3364[i]);

  // bad primes: nonsplit gives -1, split gives +1, additive gives 0
  CHECK(fourier_coefficients(E37, 37).a[37] == -1);
  CHECK(fourier_coefficients(E681, 227).a[227] == 1);
  CHECK(G.a[3] == -1);
  CHECK(H.a[29] == 0);
  CHECK(H.a[2] == 0);

  // the character-sum route agrees with the Frobenius-trace route
  for (long q : {3, 5, 7, 11, 13, 41, 97, 101, 499}) {
    auto Fq = fourier_coefficients(E681, q);
    if (q == 3) continue;  // bad prime handled above
    CHECK(Fq.a[q] == trace_of_frobenius(E681, ZZ(q)).to_long());
  }
  for (long q : {3, 5, 31, 89}) {
    auto Fq = fourier_coefficients(E3364, q);
    CHECK(Fq.a[q] == trace_of_frobenius(E3364, ZZ(q)).to_long());
  }
}

TEST_CASE("hecke recursions") {
  auto F = fourier_coefficients(E681, 3000);

  // Hasse bound at every good prime
  long checked = 0;
  for (long q = 2; q <= 3000; ++q) {
    if (!is_prime_long(q)) continue;
    if (q == 3 || q == 227) {
      CHECK(std::abs(F.a[q]) == 1);
      continue;
    }
    CHECK(F.a[q] * F.a[q] <= 4 * q);
    ++checked;
  }
  CHECK(checked > 400);

  // multiplicativity on coprime pairs
  long pairs = 0;
  for (long m = 2; m <= 54; ++m)
    for (long n = m + 1; n <= 54; ++n) {
      if (std::gcd(m, n) != 1) continue;
      CHECK(F.a[m * n] == F.a[m] * F.a[n]);
      ++pairs;
    }
  CHECK(pairs > 800);

  // prime power recursion at a good prime and a bad prime
  CHECK(F.a[4] == F.a[2] * F.a[2] - 2);
  CHECK(F.a[8] == F.a[2] * F.a[4] - 2 * F.a[2]);
  CHECK(F.a[25] == F.a[5] * F.a[5] - 5);
  CHECK(F.a[9] == 1);
  CHECK(F.a[27] == -1);
  CHECK(F.a[81] == 1);
  CHECK(F.a[243] == -1);

  auto F37 = fourier_coefficients(E37, 49);
  CHECK(F37.a[49] == F37.a[7] * F37.a[7] - 7);
}

TEST_CASE("fourier input validation") {
  // a non-minimal integral model is refused
  CHECK_THROWS_AS(fourier_coefficients(scale_model(E37, ZZ(2)), 10),
                  std::invalid_argument);
  // a non-integral model is refused
  ECurveQ bad = E37;
  bad.a4 = QQ(1, 2);
  CHECK_THROWS_AS(fourier_coefficients(bad, 10), std::invalid_argument);
  // an absurd range is refused before any allocation
  CHECK_THROWS_AS(fourier_coefficients(E37, 50000000),
                  std::invalid_argument);
}

TEST_CASE("fourier cache files") {
  const std::string path = "modular_cache_test.txt";
  std::remove(path.c_str());

  auto F1 = fourier_coefficients(E37, 40, path);
  CHECK(F1.M() == 40);

  // a smaller request is served from the stored block unchanged
  auto F0 = fourier_coefficients(E37, 25, path);
  CHECK(F0.M() == 40);
  CHECK(F0.a == F1.a);

  // growing appends a block and keeps the old values
  auto F2 = fourier_coefficients(E37, 80, path);
  CHECK(F2.M() == 80);
  for (long n = 1; n <= 40; ++n) CHECK(F2.a[n] == F1.a[n]);

  // another curve in the same file does not interfere
  auto G = fourier_coefficients(E681, 15, path);
  CHECK(G.a[2] == 1);
  CHECK(G.a[3] == -1);
  auto F3 = fourier_coefficients(E37, 60, path);
  CHECK(F3.M() == 80);
  CHECK(F3.a == F2.a);

  // the cached block equals a fresh computation
  auto Ff = fourier_coefficients(E37, 80);
  CHECK(Ff.a == F2.a);

  std::ifstream in(path);
  std::string line;
  long blocks = 0;
  while (std::getline(in, line))
    if (line.rfind("curve=", 0) == 0) ++blocks;
  in.close();
  CHECK(blocks == 3);
  std::remove(path.c_str());

  // a truncated file is rejected, not silently misread
  {
    std::ofstream out(path);
    out << "curve=0,0,1,-1,0 M=5\n1 1\n2 -2\n";
  }
  CHECK_THROWS_AS(fourier_coefficients(E37, 10, path), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("parametrization series frozen values") {
  auto F = fourier_coefficients(E37, 6000);

  // purely imaginary argument gives a real value
  CC ti(BigFloat(ZZ(0), 45), BigFloat(QQ(1, 2), 45));
  CC v1 = phi_series(F, ti, 30);
  CHECK(close(v1,
              CC(bf("0.04126746587754832873112875511127246", 45),
                 BigFloat(45)),
              "1e-26"));

  // the CM point of discriminant -3 at level 37
  CC s3 = sqrt(from_QQ(QQ(3), 45));
  CC t3 = (from_QQ(QQ(-21), 45) + cc_i(45) * s3) / BigFloat(ZZ(74), 45);
  CC v2 = phi_series(F, t3, 30);
  CHECK(close(v2,
              CC(bf("0.20468050037577260661641194607563", 45),
                 bf("-1.2256946909933950304271124159333", 45)),
              "1e-24"));

  // a generic point, regression value
  CC tg(bf("0.13", 45), bf("0.02", 45));
  CC v3 = phi_series(F, tg, 25);
  CHECK(close(v3,
              CC(bf("1.440338047280233011122891339", 45),
                 bf("-0.6754007387391658908957881078", 45)),
              "1e-20"));

  // arguments off the upper half plane are refused
  CHECK_THROWS_AS(phi_series(F, CC(bf("0.3", 30), BigFloat(30)), 10),
                  std::invalid_argument);
}

TEST_CASE("series tail control refuses short caches") {
  auto F = fourier_coefficients(E37, 50);
  CC tau(BigFloat(QQ(1, 10), 40), BigFloat(QQ(1, 1000), 40));
  bool threw = false;
  try {
    phi_series(F, tau, 30);
  } catch (const InsufficientTerms &e) {
    threw = true;
    CHECK(e.required > 1000);
    CHECK(e.required < 100000000);
    // the reported requirement really is enough
    auto F2 = fourier_coefficients(E37, e.required);
    CC v = phi_series(F2, tau, 30);
    CHECK(abs(v) < BigFloat(100.0, 40));
  }
  CHECK(threw);
}

TEST_CASE("period lattices match elliptic integral constants") {
  // conductor 37 short model: rectangular lattice
  PeriodData L = period_lattice(ZZ(-1296), ZZ(11664), 60);
  CC w2f(bf("0.4989097743719932716386683299087513629662", 80), BigFloat(80));
  CC w1f(BigFloat(80), bf("0.4085648969977983434757041386444208708916", 80));
  CHECK(close(L.w2, w2f, "1e-40"));
  CHECK(close(L.w1, w1f, "1e-40"));
  for (const CC &e : L.roots) {
    CC r = (e * e - from_QQ(QQ(1296), 80)) * e + from_QQ(QQ(11664), 80);
    CHECK(abs(r) < bf("1e-55", 80));
  }

  // conductor 681 short model
  PeriodData L6 = period_lattice(ZZ(-1496259), ZZ(-693495810), 60);
  CHECK(close(L6.w2,
              CC(bf("0.06832648911580817470105658256147410205016", 80),
                 BigFloat(80)),
              "1e-40"));
  CHECK(close(L6.w1,
              CC(BigFloat(80),
                 bf("0.11873262848185980812232802974376616157346", 80)),
              "1e-40"));

  // y^2 = x^3 - x has the square lattice
  PeriodData Ls = period_lattice(ZZ(-1), ZZ(0), 60);
  CHECK(close(Ls.w2,
              CC(bf("2.622057554292119810464839589891119413682", 80),
                 BigFloat(80)),
              "1e-39"));
  CHECK(close(Ls.w1, cc_i(80) * Ls.w2, "1e-39"));
  CHECK(abs(reduce_mod_lattice(cc_i(80) * Ls.w1, Ls.w1, Ls.w2)) <
        bf("1e-50", 80));

  // y^2 = x^3 + 1 has the hexagonal lattice
  PeriodData Lh = period_lattice(ZZ(0), ZZ(1), 60);
  CC z6 = (from_QQ(QQ(1), 80) + cc_i(80) * sqrt(from_QQ(QQ(3), 80))) /
          BigFloat(ZZ(2), 80);
  CHECK(abs(reduce_mod_lattice(z6 * Lh.w1, Lh.w1, Lh.w2)) < bf("1e-50", 80));
  CHECK(abs(reduce_mod_lattice(z6 * Lh.w2, Lh.w1, Lh.w2)) < bf("1e-50", 80));

  // conductor 3364 short model: negative discriminant, one real root
  PeriodData L3 = period_lattice(ZZ(-5265480816L), ZZ(-147063590886528L), 60);
  CHECK(close(L3.w2,
              CC(bf("0.008861557305342123891675110927867461992573", 80),
                 BigFloat(80)),
              "1e-40"));
  CC q3 = L3.w1 / L3.w2;
  CHECK(q3.im > BigFloat(0.5, 80));
  BigFloat twice_re = q3.re + q3.re;
  ZZ k = round_to_ZZ(twice_re);
  CHECK(abs(twice_re - BigFloat(k, 80)) < bf("1e-50", 80));
  CHECK(fdiv_r(k, ZZ(2)).is_one());

  // requested precision is actually reached
  PeriodData Lhi = period_lattice(ZZ(-1296), ZZ(11664), 150);
  CHECK(close(Lhi.w2, L.w2, "1e-70"));
  CHECK(close(Lhi.w1, L.w1, "1e-70"));

  // singular cubics and degenerate lattices are refused
  CHECK_THROWS_AS(period_lattice(ZZ(-3), ZZ(2), 30), std::invalid_argument);
  CHECK_THROWS_AS(
      reduce_mod_lattice(L.w2, L.w2, L.w2 * BigFloat(2.0, 80)),
      std::invalid_argument);
}

TEST_CASE("uniformization round trips") {
  const ZZ A(-1296), B(11664);
  PeriodData L = period_lattice(A, B, 40);

  CC z = L.w2 * bf("0.3", 60) + L.w1 * bf("0.12", 60);
  CPoint P = uniformize(L, A, B, z, 40);
  CHECK(!P.at_infinity);
  CHECK(curve_residual(A, B, P) < bf("1e-35", 60));

  // parity: -z gives (x, -y)
  CPoint Pm = uniformize(L, A, B, CC(60) - z, 40);
  CHECK(close(Pm.x, P.x, "1e-30"));
  CHECK(close(Pm.y, CC(60) - P.y, "1e-30"));

  // periodicity
  CPoint Pp = uniformize(
      L, A, B, z + L.w1 * BigFloat(ZZ(3), 60) - L.w2 * BigFloat(ZZ(2), 60),
      40);
  CHECK(close(Pp.x, P.x, "1e-30"));
  CHECK(close(Pp.y, P.y, "1e-30"));

  // the real half period lands on the largest root with y = 0
  CPoint H = uniformize(L, A, B, L.w2 * BigFloat(QQ(1, 2), 60), 40);
  CHECK(abs(H.y) < bf("1e-30", 60));
  CHECK(close(H.x, L.roots[0], "1e-30"));

  // lattice points give the point at infinity
  CHECK(uniformize(L, A, B, L.w1 + L.w2, 40).at_infinity);
  CHECK(uniformize(L, A, B, CC(60), 40).at_infinity);

  // the map is a homomorphism onto the chord-and-tangent group law
  CC z1 = L.w2 * bf("0.23", 60) + L.w1 * bf("0.04", 60);
  CC z2 = L.w2 * bf("0.11", 60) + L.w1 * bf("0.31", 60);
  CPoint P1 = uniformize(L, A, B, z1, 40);
  CPoint P2 = uniformize(L, A, B, z2, 40);
  CPoint P12 = uniformize(L, A, B, z1 + z2, 40);
  CCOps Fc(50);
  ECurve<CC> Ecc{from_QQ(QQ(0), 50), from_QQ(QQ(0), 50), from_QQ(QQ(0), 50),
                 from_QQ(QQ(A), 50), from_QQ(QQ(B), 50)};
  auto S = ec_add(Fc, Ecc, EPt<CC>::xy(P1.x, P1.y), EPt<CC>::xy(P2.x, P2.y));
  REQUIRE(!S.at_infinity);
  CHECK(close(S.x, P12.x, "1e-28"));
  CHECK(close(S.y, P12.y, "1e-26"));

  // negative discriminant curve: the real half period lands on the real root
  const ZZ A3(-5265480816L), B3(-147063590886528L);
  PeriodData L3 = period_lattice(A3, B3, 40);
  CPoint H3 = uniformize(L3, A3, B3, L3.w2 * BigFloat(QQ(1, 2), 60), 40);
  CHECK(abs(H3.y) < bf("1e-22", 60));
  CHECK(close(H3.x, L3.roots[0], "1e-25"));
  CC z3 = L3.w2 * bf("0.29", 60) + L3.w1 * bf("0.17", 60);
  CHECK(curve_residual(A3, B3, uniformize(L3, A3, B3, z3, 40)) <
        bf("1e-33", 60));
}

TEST_CASE("series is periodic under the level structure") {
  // a matrix [a, b; c, d] with c = N fixes phi up to the curve's own period
  // lattice, which is six times the short-model lattice
  auto F = fourier_coefficients(E37, 2000);
  CC tau(bf("0.13", 40), bf("0.02", 40));
  ZZ ai;
  REQUIRE(invmod(ZZ(-5), ZZ(37), ai));
  ZZ bz = (ai * ZZ(-5) - ZZ(1)) / ZZ(37);
  CC gt = (from_QQ(QQ(ai), 40) * tau + from_QQ(QQ(bz), 40)) /
          (from_QQ(QQ(37), 40) * tau + from_QQ(QQ(-5), 40));
  CC diff = phi_series(F, gt, 20) - phi_series(F, tau, 20);
  auto [W1, W2] = min_lattice(E37, 30);
  CHECK(abs(reduce_mod_lattice(diff, W1, W2)) < bf("1e-13", 40));

  auto F6 = fourier_coefficients(E681, 20000);
  CC tau0(BigFloat(QQ(571, 10000), 40), BigFloat(QQ(1, 500), 40));
  ZZ ai6;
  REQUIRE(invmod(ZZ(-38), ZZ(681), ai6));
  ZZ b6 = (ai6 * ZZ(-38) - ZZ(1)) / ZZ(681);
  CC gt6 = (from_QQ(QQ(ai6), 40) * tau0 + from_QQ(QQ(b6), 40)) /
           (from_QQ(QQ(681), 40) * tau0 + from_QQ(QQ(-38), 40));
  CC diff6 = phi_series(F6, gt6, 16) - phi_series(F6, tau0, 16);
  auto [V1, V2] = min_lattice(E681, 30);
  CHECK(abs(reduce_mod_lattice(diff6, V1, V2)) < bf("1e-10", 40));

  // regression value at the base point
  CC v4 = phi_series(F6, tau0, 20);
  CHECK(close(v4,
              CC(bf("0.9666790157090439181418658534", 45),
                 bf("0.3525274985160450120567686319", 45)),
              "1e-16"));
}

TEST_CASE("short models and the return map") {
  ECurveQ S6 = short_model(E681);
  CHECK(S6.a4 == QQ(ZZ(-1496259)));
  CHECK(S6.a6 == QQ(ZZ(-693495810)));
  CHECK(short_model(E37).a4 == QQ(-1296));
  CHECK(short_model(E37).a6 == QQ(11664));
  CHECK(short_model(E3364).a4 == QQ(ZZ(-5265480816L)));
  CHECK(short_model(E3364).a6 == QQ(ZZ(-147063590886528L)));

  // a short-model point returns to a point satisfying the long equation
  const ZZ A(-1496259), B(-693495810);
  PeriodData L = period_lattice(A, B, 40);
  CC z = L.w2 * bf("0.37", 50) + L.w1 * bf("0.21", 50);
  CPoint Ps = uniformize(L, A, B, z, 40);
  CPoint P = short_to_curve(E681, Ps, 40);
  CC lhs = P.y * P.y + from_QQ(E681.a1, 50) * P.x * P.y +
           from_QQ(E681.a3, 50) * P.y;
  CC rhs = ((P.x + from_QQ(E681.a2, 50)) * P.x + from_QQ(E681.a4, 50)) * P.x +
           from_QQ(E681.a6, 50);
  CHECK(abs(lhs - rhs) < bf("1e-25", 50));

  // the integral point (1, 0) corresponds to (36, 108) on the short model
  CPoint W{false, from_QQ(QQ(36), 40), from_QQ(QQ(108), 40)};
  CPoint Q = short_to_curve(E37, W, 30);
  CHECK(close(Q.x, from_QQ(QQ(1), 40), "1e-25"));
  CHECK(abs(Q.y) < bf("1e-25", 40));

  CPoint I{true, CC(40), CC(40)};
  CHECK(short_to_curve(E37, I, 30).at_infinity);
}

TEST_CASE("the level 37 CM point descends to a rational point") {
  ClassGroup G = class_group(ZZ(-3));
  TauOrbit orb = heegner_taus(G, ZZ(37), 45);
  REQUIRE(orb.taus.size() == 1);
  auto F = fourier_coefficients(E37, 6000);
  CC z = phi_series(F, orb.taus[0], 30);

  ECurveQ S = short_model(E37);
  const ZZ A = S.a4.num(), B = S.a6.num();
  PeriodData L = period_lattice(A, B, 30);
  CPoint Ps = uniformize(L, A, B, z / BigFloat(ZZ(6), 40), 25);
  CPoint P = short_to_curve(E37, Ps, 25);
  REQUIRE(!P.at_infinity);
  CHECK(close(P.x, from_QQ(QQ(-1), 40), "1e-18"));
  CHECK(abs(P.y) < bf("1e-18", 40));
}

TEST_CASE("labeled CM orbits") {
  ClassGroup G = class_group(ZZ(-107));
  TauOrbit orb = heegner_taus(G, ZZ(681), 35);
  REQUIRE(orb.taus.size() == 3);
  auto F = fourier_coefficients(E681, 25000);
  ConjugateOrbit O = conjugate_orbit(orb, F, 25);
  REQUIRE(O.z.size() == 6);
  REQUIRE(O.labels.size() == 6);
  for (int i = 0; i < 3; ++i) {
    CHECK(!O.labels[i].reflected);
    CHECK(O.labels[i].rotation == i);
    CHECK(O.labels[3 + i].reflected);
    CHECK(O.labels[3 + i].rotation == i);
    CHECK(abs(O.z[3 + i] - conj(O.z[i])) < bf("1e-20", 35));
  }
  // the three rotation values are distinct points
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      CHECK(abs(O.z[i] - O.z[j]) > bf("1e-6", 35));

  // orbits whose size is not an odd prime are refused
  auto Ftiny = fourier_coefficients(E37, 16);
  ClassGroup G4 = class_group(ZZ(-4));
  TauOrbit o1 = heegner_taus(G4, ZZ(13), 30);
  CHECK_THROWS_AS(conjugate_orbit(o1, Ftiny, 10), std::invalid_argument);
  ClassGroup G39 = class_group(ZZ(-39));
  TauOrbit o4 = heegner_taus(G39, ZZ(2), 30);
  CHECK_THROWS_AS(conjugate_orbit(o4, Ftiny, 10), std::invalid_argument);
}
