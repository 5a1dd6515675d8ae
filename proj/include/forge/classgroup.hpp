// Binary quadratic forms of negative fundamental discriminant: Gauss
// reduction, Dirichlet composition through concordant representatives, the
// full class group with its multiplication table, and the CM points in the
// upper half plane attached to a level N whose primes all split in the
// field, together with the ideal-class action on those points.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "forge/bigfloat.hpp"
#include "forge/elliptic.hpp"
#include "forge/rational.hpp"

namespace forge {

// D is not a negative fundamental discriminant
struct NotFundamental : std::invalid_argument {
  explicit NotFundamental(const std::string &m) : std::invalid_argument(m) {}
};

// some prime of the level fails to split in Q(sqrt(D))
struct HypothesisFails : std::runtime_error {
  explicit HypothesisFails(const std::string &m) : std::runtime_error(m) {}
};

struct QForm {
  ZZ a, b, c;

  bool operator==(const QForm &o) const = default;
  // (a, b, c) lexicographic; used to keep class lists in a canonical order
  bool operator<(const QForm &o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

ZZ form_disc(const QForm &f);  // b^2 - 4ac

// Gauss-reduced representative of the class of f (positive definite forms:
// |b| <= a <= c with b >= 0 when |b| = a or a = c); requires a > 0, disc < 0
QForm reduce_form(QForm f);

// a form equivalent to f whose first coefficient is coprime to m
QForm class_rep_coprime_to(const QForm &f, const ZZ &m);

// Dirichlet composition: move g to a representative whose first coefficient
// is coprime to f.a, align the middle coefficients by CRT, multiply; the
// result is reduced
QForm compose(const QForm &f, const QForm &g);

struct ClassGroup {
  ZZ D;                                 // negative fundamental discriminant
  std::vector<QForm> classes;           // reduced forms, (a, b, c) ascending
  std::vector<std::vector<int>> table;  // table[i][j] = class of product
  std::vector<int> inverse;             // inverse[i] = class of (a, -b, c)
  int principal = 0;                    // index of the identity class

  int h() const { return static_cast<int>(classes.size()); }
  int index_of(const QForm &reduced) const;  // throws on a non-member
};

// number of reduced forms of discriminant D (D < 0 fundamental)
long class_number(const ZZ &D);

ClassGroup class_group(const ZZ &D);

// smallest nonnegative b with b^2 = D mod 4N; exists exactly when every
// prime of N splits in Q(sqrt(D)), otherwise HypothesisFails
ZZ heegner_b(const ZZ &D, const ZZ &N);

// one form per ideal class with first coefficient divisible by N and middle
// coefficient congruent to heegner_b(D, N) mod 2N; entry i lies in the
// class of classes[i] composed with the level form (N, b_N, *)
std::vector<QForm> heegner_forms(const ClassGroup &G, const ZZ &N);

struct TauOrbit {
  ZZ N;
  ZZ bN;
  std::vector<QForm> forms;  // forms[i] as produced by heegner_forms
  std::vector<CC> taus;      // tau_i = (-b_i + sqrt(D)) / (2 a_i)
  // action[j][i] = table[i][inverse[j]]: the permutation of class labels
  // induced by class j acting through multiplication by its inverse
  std::vector<std::vector<int>> action;
};

TauOrbit heegner_taus(const ClassGroup &G, const ZZ &N, long digits);

// fundamental D < 0 with |D| <= bound, every prime of conductor(E) split in
// Q(sqrt(D)), and class number exactly p; ordered by |D| ascending.
// p must be an odd prime.
std::vector<ZZ> discriminant_search(const ECurveQ &E, const ZZ &p,
                                    const ZZ &bound);

}  // namespace forge
