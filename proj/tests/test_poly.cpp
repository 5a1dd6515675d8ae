#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "forge/poly.hpp"

using namespace forge;

namespace {

Poly<QQ> qpoly(std::initializer_list<long> coeffs_low_to_high) {
  std::vector<QQ> v;
  for (long c : coeffs_low_to_high) v.emplace_back(ZZ(c));
  return Poly<QQ>(std::move(v));
}

Poly<ZZ> zpoly(std::initializer_list<long> coeffs_low_to_high) {
  std::vector<ZZ> v;
  for (long c : coeffs_low_to_high) v.emplace_back(c);
  return Poly<ZZ>(std::move(v));
}

std::mt19937_64 rng(424242);

Poly<QQ> random_qpoly(int maxdeg, long spread) {
  std::uniform_int_distribution<int> dd(0, maxdeg);
  std::uniform_int_distribution<long> dc(-spread, spread);
  std::uniform_int_distribution<long> dn(1, spread);
  int deg = dd(rng);
  std::vector<QQ> v;
  for (int i = 0; i <= deg; ++i) v.emplace_back(ZZ(dc(rng)), ZZ(dn(rng)));
  return Poly<QQ>(std::move(v));
}

}  // namespace

TEST_CASE("construction, trimming, basic ring operations") {
  Poly<QQ> z;
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);

  Poly<QQ> t(std::vector<QQ>{QQ(1), QQ(2), QQ(0), QQ(0)});
  CHECK(t.degree() == 1);

  Poly<QQ> f = qpoly({-4, 7, 0, -2, 3});
  CHECK(f.degree() == 4);
  CHECK(f.coeff(3) == QQ(-2));
  CHECK(f.coeff(9) == QQ(0));

  Poly<QQ> x = Poly<QQ>::x();
  CHECK(x * x == Poly<QQ>::xpow(2));
  CHECK((f + (-f)).is_zero());
  CHECK(f * qpoly({1}) == f);
}

TEST_CASE("division with remainder over a field") {
  std::uniform_int_distribution<int> nonzero_guard(0, 1);
  int done = 0;
  while (done < 1500) {
    Poly<QQ> a = random_qpoly(8, 12);
    Poly<QQ> b = random_qpoly(5, 12);
    if (b.is_zero()) continue;
    Poly<QQ> q, r;
    divrem(a, b, q, r);
    CHECK(a == q * b + r);
    CHECK(r.degree() < b.degree());
    ++done;
  }
}

TEST_CASE("gcd is monic, divides both, and respects common factors") {
  int done = 0;
  while (done < 500) {
    Poly<QQ> f = random_qpoly(5, 6);
    Poly<QQ> g = random_qpoly(5, 6);
    Poly<QQ> h = random_qpoly(3, 6);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    Poly<QQ> d = poly_gcd(f * h, g * h);
    CHECK((f * h) % d == Poly<QQ>());
    CHECK((g * h) % d == Poly<QQ>());
    // d is a multiple of h up to the gcd of f and g
    CHECK(d % (h * inverse(h.lead())) == Poly<QQ>());
    CHECK(d.lead() == QQ(1));
    ++done;
  }
}

TEST_CASE("extended gcd identity") {
  int done = 0;
  while (done < 500) {
    Poly<QQ> a = random_qpoly(6, 8);
    Poly<QQ> b = random_qpoly(6, 8);
    if (a.is_zero() && b.is_zero()) continue;
    Poly<QQ> u, v;
    Poly<QQ> g = poly_gcdext(a, b, u, v);
    CHECK(u * a + v * b == g);
    if (!g.is_zero()) CHECK(g.lead() == QQ(1));
    ++done;
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  for (int iter = 0; iter < 500; ++iter) {
    Poly<QQ> a = random_qpoly(6, 9);
    Poly<QQ> b = random_qpoly(6, 9);
    std::uniform_int_distribution<long> dc(-20, 20);
    QQ x(ZZ(dc(rng)), ZZ(7));
    CHECK(eval(a + b, x) == eval(a, x) + eval(b, x));
    CHECK(eval(a * b, x) == eval(a, x) * eval(b, x));
  }
}

TEST_CASE("derivative satisfies the product rule") {
  for (int iter = 0; iter < 500; ++iter) {
    Poly<QQ> a = random_qpoly(5, 9);
    Poly<QQ> b = random_qpoly(5, 9);
    CHECK(derivative(a * b) == derivative(a) * b + a * derivative(b));
  }
}

TEST_CASE("modular composition agrees with direct substitution") {
  for (int iter = 0; iter < 200; ++iter) {
    Poly<QQ> a = random_qpoly(4, 5);
    Poly<QQ> b = random_qpoly(3, 5);
    Poly<QQ> m = random_qpoly(4, 5);
    if (m.degree() < 1) continue;
    // direct substitution then reduction
    Poly<QQ> direct;
    for (long i = a.degree(); i >= 0; --i)
      direct = (direct * b + Poly<QQ>(a.coeff(i))) % m;
    CHECK(compose_mod(a, b, m) == direct);
  }
}

TEST_CASE("content and primitive part") {
  Poly<ZZ> f = zpoly({-6, 9, 12});
  CHECK(content(f) == ZZ(3));
  CHECK(primitive_part(f) == zpoly({-2, 3, 4}));
  // sign convention: the content is nonnegative, the primitive part carries
  // a positive leading coefficient, so the product recovers |f| up to sign
  Poly<ZZ> g = zpoly({4, -2, -6});
  CHECK(primitive_part(g) == zpoly({-2, 1, 3}));
  CHECK(content(g) == ZZ(2));
  CHECK(primitive_part(g) * Poly<ZZ>(content(g)) == -g);

  ZZ den;
  Poly<ZZ> h = to_ZZ_poly(qpoly({1, 0, 3}) * QQ(1, 6) + qpoly({0, 1}) * QQ(1, 4), den);
  CHECK(den == ZZ(12));
  CHECK(h == zpoly({2, 3, 6}));
  CHECK(to_QQ_poly(zpoly({1, -2})) == qpoly({1, -2}));
}

TEST_CASE("resultants and discriminants against independent values") {
  // values computed independently with sympy resultant/discriminant
  Poly<ZZ> f = zpoly({-4, 7, 0, -2, 3});
  Poly<ZZ> g = zpoly({-5, 0, 1, 2});
  CHECK(resultant(f, g) == ZZ(101502));

  Poly<ZZ> h = zpoly({11, 2, 0, -4, 0, 1});
  CHECK(poly_discriminant(h) == ZZ(42446885));

  Poly<ZZ> q = zpoly({2, -1, 3, 0, -1, 0, 6});
  CHECK(poly_discriminant(q) == ZZ("-18210255528"));
  CHECK(resultant(h, q) == ZZ("16131383395"));
}

TEST_CASE("resultant properties") {
  std::uniform_int_distribution<long> dc(-9, 9);
  auto random_zpoly = [&](int deg) {
    std::vector<ZZ> v;
    for (int i = 0; i <= deg; ++i) v.emplace_back(dc(rng));
    return Poly<ZZ>(std::move(v));
  };
  int done = 0;
  while (done < 300) {
    Poly<ZZ> a = random_zpoly(4), b = random_zpoly(3), c = random_zpoly(3);
    if (a.degree() < 1 || b.degree() < 1 || c.degree() < 1) continue;
    // multiplicativity in the second argument
    CHECK(resultant(a, b * c) == resultant(a, b) * resultant(a, c));
    // swap symmetry up to sign
    ZZ lhs = resultant(a, b);
    ZZ rhs = resultant(b, a);
    long s = (long)(a.degree()) * (long)(b.degree());
    CHECK(lhs == (s % 2 == 0 ? rhs : -rhs));
    ++done;
  }
  // resultant vanishes exactly on a shared root
  Poly<ZZ> share = zpoly({-3, 1});  // x - 3
  Poly<ZZ> a = zpoly({1, 4, 1}) * share;
  Poly<ZZ> b = zpoly({2, -1}) * share;
  CHECK(resultant(a, b) == ZZ(0));
}
