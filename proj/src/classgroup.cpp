// Class groups of imaginary quadratic orders via reduced binary quadratic
// forms.  Composition uses the concordant-representative route: push one
// form into a class representative whose first coefficient is coprime to
// the other's, align middle coefficients with a CRT step, and read off the
// product form directly.  The coprime representative is built locally at
// each prime and glued, so no unbounded search is involved.

#include "forge/classgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "forge/minimal.hpp"
#include "forge/zarith.hpp"

namespace forge {

namespace {

// apply the unimodular substitution (x, y) -> (p x + q y, r x + s y)
QForm transform(const QForm &f, const ZZ &p, const ZZ &q, const ZZ &r,
                const ZZ &s) {
  if (p * s - q * r != ZZ(1))
    throw std::logic_error("transform: matrix not unimodular");
  QForm g;
  g.a = f.a * p * p + f.b * p * r + f.c * r * r;
  g.b = ZZ(2) * f.a * p * q + f.b * (p * s + q * r) + ZZ(2) * f.c * r * s;
  g.c = f.a * q * q + f.b * q * s + f.c * s * s;
  return g;
}

// all reduced forms of discriminant D, sorted by (a, b, c)
std::vector<QForm> reduced_forms(const ZZ &D) {
  std::vector<QForm> out;
  for (ZZ a(1); ZZ(3) * a * a <= -D; a += ZZ(1)) {
    for (ZZ b = -a + ZZ(1); b <= a; b += ZZ(1)) {
      if (fdiv_r(b - D, ZZ(2)) != ZZ(0)) continue;  // b and D share parity
      ZZ num = b * b - D;
      if (!divides(ZZ(4) * a, num)) continue;
      ZZ c = divexact(num, ZZ(4) * a);
      if (c < a) continue;
      if (c == a && b < ZZ(0)) continue;
      out.push_back(QForm{a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

QForm principal_form(const ZZ &D) {
  if (fdiv_r(D, ZZ(2)).is_zero()) return QForm{ZZ(1), ZZ(0), divexact(-D, ZZ(4))};
  return QForm{ZZ(1), ZZ(1), divexact(ZZ(1) - D, ZZ(4))};
}

void require_fundamental(const ZZ &D, const char *who) {
  if (D.sign() >= 0 || !is_fundamental_discriminant(D))
    throw NotFundamental(std::string(who) +
                         ": need a negative fundamental discriminant, got " +
                         D.str());
}

}  // namespace

ZZ form_disc(const QForm &f) { return f.b * f.b - ZZ(4) * f.a * f.c; }

QForm reduce_form(QForm f) {
  if (f.a.sign() <= 0)
    throw std::invalid_argument("reduce_form: leading coefficient must be positive");
  if (form_disc(f).sign() >= 0)
    throw std::invalid_argument("reduce_form: discriminant must be negative");
  while (true) {
    // normalize b into (-a, a]
    ZZ r = fdiv_r(f.a - f.b, ZZ(2) * f.a);
    ZZ bn = f.a - r;
    ZZ cn = divexact(bn * bn - form_disc(f), ZZ(4) * f.a);
    f = QForm{f.a, bn, cn};
    if (f.a > f.c) {
      f = QForm{f.c, -f.b, f.a};
      continue;
    }
    if (f.a == f.c && f.b.sign() < 0) f.b = -f.b;
    return f;
  }
}

QForm class_rep_coprime_to(const QForm &f, const ZZ &m) {
  ZZ mm = abs(m);
  if (mm <= ZZ(1) || gcd(f.a, mm).is_one()) return f;
  // prefer the smallest value on a box of primitive vectors: downstream the
  // representative's leading coefficient sets the height of a CM point, so
  // a small one keeps series lengths down
  ZZ best(0);
  long bx = 0, by = 0;
  for (long x = -16; x <= 16; ++x)
    for (long y = -16; y <= 16; ++y) {
      if (std::gcd(x, y) != 1) continue;
      ZZ val = (f.a * ZZ(x) + f.b * ZZ(y)) * ZZ(x) + f.c * ZZ(y) * ZZ(y);
      if (val.is_zero() || !gcd(val, mm).is_one()) continue;
      if (best.is_zero() || abs(val) < abs(best)) {
        best = val;
        bx = x;
        by = y;
      }
    }
  if (!best.is_zero()) {
    ZZ x(bx), y(by), u, v;
    gcdext(x, y, u, v);  // x u + y v = 1
    QForm g = transform(f, x, -v, y, u);
    if (!gcd(g.a, mm).is_one())
      throw std::logic_error("class_rep_coprime_to: box candidate failed");
    return g;
  }
  // fallback: choose (x, y) mod every prime of m so the form value is a unit
  // there; one of f(1,0) = a, f(0,1) = c, f(1,1) = a+b+c works since the
  // form is primitive
  ZZ x(0), y(0), mod(1);
  for (const auto &[q, e] : factorize(mm)) {
    (void)e;
    ZZ xq(1), yq(0);
    if (divides(q, f.a)) {
      if (!divides(q, f.c)) {
        xq = ZZ(0);
        yq = ZZ(1);
      } else {
        xq = ZZ(1);
        yq = ZZ(1);
        if (divides(q, f.a + f.b + f.c))
          throw std::logic_error("class_rep_coprime_to: form not primitive");
      }
    }
    x = crt_pair(x, mod, xq, q);
    y = crt_pair(y, mod, yq, q);
    mod = mod * q;
  }
  // lift to a coprime pair: primes of x dividing mod already avoid y, the
  // rest are dodged by stepping y through its residue classes mod x
  if (x.is_zero()) x = mod;  // y is then a unit mod every prime of m
  for (long k = 0;; ++k) {
    if (k > 10000)
      throw std::logic_error("class_rep_coprime_to: no coprime lift found");
    if (gcd(x, y).is_one()) break;
    y += mod;
  }
  ZZ u, v;
  gcdext(x, y, u, v);  // x u + y v = 1
  QForm g = transform(f, x, -v, y, u);
  if (!gcd(g.a, mm).is_one())
    throw std::logic_error("class_rep_coprime_to: residue choice failed");
  return g;
}

QForm compose(const QForm &f, const QForm &g) {
  ZZ D = form_disc(f);
  if (form_disc(g) != D)
    throw std::invalid_argument("compose: discriminants differ");
  QForm g2 = class_rep_coprime_to(g, f.a);
  const ZZ &a1 = f.a, &a2 = g2.a;
  // align the middle coefficients: B = b1 mod 2 a1 and B = b2 mod 2 a2
  ZZ inv;
  if (!invmod(a1, a2, inv))
    throw std::logic_error("compose: representatives not coprime");
  ZZ t = fdiv_r(divexact(g2.b - f.b, ZZ(2)) * inv, a2);
  ZZ B = f.b + ZZ(2) * a1 * t;
  ZZ A = a1 * a2;
  ZZ C = divexact(B * B - D, ZZ(4) * A);
  return reduce_form(QForm{A, B, C});
}

int ClassGroup::index_of(const QForm &reduced) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), reduced);
  if (it == classes.end() || !(*it == reduced))
    throw std::invalid_argument("ClassGroup::index_of: form not in the list");
  return static_cast<int>(it - classes.begin());
}

long class_number(const ZZ &D) {
  require_fundamental(D, "class_number");
  return static_cast<long>(reduced_forms(D).size());
}

ClassGroup class_group(const ZZ &D) {
  require_fundamental(D, "class_group");
  ClassGroup G;
  G.D = D;
  G.classes = reduced_forms(D);
  int h = G.h();
  G.table.assign(h, std::vector<int>(h, 0));
  for (int i = 0; i < h; ++i)
    for (int j = 0; j <= i; ++j) {
      int k = G.index_of(compose(G.classes[i], G.classes[j]));
      G.table[i][j] = k;
      G.table[j][i] = k;
    }
  G.inverse.resize(h);
  G.principal = G.index_of(principal_form(D));
  for (int i = 0; i < h; ++i) {
    QForm opp = QForm{G.classes[i].a, -G.classes[i].b, G.classes[i].c};
    G.inverse[i] = G.index_of(reduce_form(opp));
    if (G.table[i][G.inverse[i]] != G.principal)
      throw std::logic_error("class_group: inverse does not multiply to the identity");
  }
  return G;
}

ZZ heegner_b(const ZZ &D, const ZZ &N) {
  require_fundamental(D, "heegner_b");
  if (N <= ZZ(0)) throw std::invalid_argument("heegner_b: N must be positive");
  for (const auto &[q, e] : factorize(N)) {
    (void)e;
    if (kronecker(D, q) != 1)
      throw HypothesisFails("heegner_b: prime " + q.str() +
                            " of the level does not split in Q(sqrt(" +
                            D.str() + "))");
  }
  auto b = smallest_sqrt_mod(D, ZZ(4) * N);
  if (!b)
    throw HypothesisFails("heegner_b: no square root of " + D.str() +
                          " modulo 4N");
  return *b;
}

std::vector<QForm> heegner_forms(const ClassGroup &G, const ZZ &N) {
  ZZ bN = heegner_b(G.D, N);
  QForm level{N, bN, divexact(bN * bN - G.D, ZZ(4) * N)};
  int level_class = G.index_of(reduce_form(level));
  std::vector<QForm> out;
  out.reserve(G.classes.size());
  for (int i = 0; i < G.h(); ++i) {
    QForm rep = class_rep_coprime_to(G.classes[i], N);
    // concordant product with the level form, kept unreduced so that the
    // congruences a = 0 mod N and b = b_N mod 2N stay visible
    ZZ inv;
    if (!invmod(N, rep.a, inv))
      throw std::logic_error("heegner_forms: representative not coprime to N");
    ZZ t = fdiv_r(divexact(rep.b - bN, ZZ(2)) * inv, rep.a);
    ZZ B = bN + ZZ(2) * N * t;
    ZZ A = N * rep.a;
    QForm h{A, B, divexact(B * B - G.D, ZZ(4) * A)};
    if (!divides(N, h.a) || fdiv_r(h.b - bN, ZZ(2) * N) != ZZ(0))
      throw std::logic_error("heegner_forms: congruence lost");
    if (reduce_form(h) != G.classes[G.table[i][level_class]])
      throw std::logic_error("heegner_forms: product landed in the wrong class");
    out.push_back(h);
  }
  return out;
}

TauOrbit heegner_taus(const ClassGroup &G, const ZZ &N, long digits) {
  TauOrbit orbit;
  orbit.N = N;
  orbit.bN = heegner_b(G.D, N);
  orbit.forms = heegner_forms(G, N);
  BigFloat sqrtD = sqrt(BigFloat(-G.D, digits));
  for (const QForm &f : orbit.forms) {
    BigFloat den(ZZ(2) * f.a, digits);
    orbit.taus.push_back(CC(BigFloat(-f.b, digits) / den, sqrtD / den));
  }
  int h = G.h();
  orbit.action.assign(h, std::vector<int>(h, 0));
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < h; ++i) orbit.action[j][i] = G.table[i][G.inverse[j]];
  return orbit;
}

std::vector<ZZ> discriminant_search(const ECurveQ &E, const ZZ &p,
                                    const ZZ &bound) {
  if (p < ZZ(3) || p.is_even() || !is_probable_prime(p))
    throw std::invalid_argument("discriminant_search: p must be an odd prime");
  ZZ N = conductor(E);
  auto N_primes = factorize(N);
  std::vector<ZZ> out;
  for (ZZ D(-3); -D <= bound; D -= ZZ(1)) {
    if (!is_fundamental_discriminant(D)) continue;
    bool split = true;
    for (const auto &[q, e] : N_primes) {
      (void)e;
      if (kronecker(D, q) != 1) {
        split = false;
        break;
      }
    }
    if (!split) continue;
    if (ZZ(class_number(D)) == p) out.push_back(D);
  }
  return out;
}

}  // namespace forge
