#include "forge/lattice.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "forge/bigfloat.hpp"

namespace forge {

MatZ matz(std::initializer_list<std::initializer_list<long>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c =
      r == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  MatZ m(r, c);
  Eigen::Index i = 0;
  for (const auto &row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c)
      throw std::invalid_argument("matz: ragged row lengths");
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = ZZ(v);
    ++i;
  }
  return m;
}

RowZ rowz(std::initializer_list<long> entries) {
  RowZ r(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index j = 0;
  for (long v : entries) r(j++) = ZZ(v);
  return r;
}

namespace {

// Row echelon Hermite form in place.  Entry growth is controlled by always
// pivoting on the least nonzero absolute value and reducing with rounded
// (not floor) division, and by clearing the entries above a pivot as soon
// as the pivot is final.
int hnf_core(MatZ &h, MatZ *u) {
  const Eigen::Index m = h.rows(), n = h.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    while (true) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = r; i < m; ++i)
        if (!h(i, c).is_zero() && (piv < 0 || abs(h(i, c)) < abs(h(piv, c))))
          piv = i;
      if (piv < 0) break;
      if (piv != r) {
        h.row(piv).swap(h.row(r));
        if (u) u->row(piv).swap(u->row(r));
      }
      bool column_clear = true;
      for (Eigen::Index i = r + 1; i < m; ++i) {
        if (h(i, c).is_zero()) continue;
        ZZ q = rdiv_q(h(i, c), h(r, c));
        if (!q.is_zero()) {
          h.row(i) -= q * h.row(r);
          if (u) u->row(i) -= q * u->row(r);
        }
        if (!h(i, c).is_zero()) column_clear = false;
      }
      if (column_clear) break;
    }
    if (h(r, c).is_zero()) continue;
    if (h(r, c).sign() < 0) {
      h.row(r) = -h.row(r);
      if (u) u->row(r) = -u->row(r);
    }
    for (Eigen::Index i = 0; i < r; ++i) {
      ZZ q = fdiv_q(h(i, c), h(r, c));
      if (!q.is_zero()) {
        h.row(i) -= q * h.row(r);
        if (u) u->row(i) -= q * u->row(r);
      }
    }
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace

HnfResult hnf_with_transform(const MatZ &a) {
  HnfResult res;
  res.H = a;
  res.U = MatZ::Identity(a.rows(), a.rows());
  res.rank = hnf_core(res.H, &res.U);
  return res;
}

MatZ hnf(const MatZ &a) {
  MatZ h = a;
  hnf_core(h, nullptr);
  return h;
}

MatZ hnf_nonzero_rows(const MatZ &a) {
  MatZ h = a;
  int rank = hnf_core(h, nullptr);
  return h.topRows(rank);
}

MatZ left_kernel(const MatZ &a) {
  HnfResult res = hnf_with_transform(a);
  const Eigen::Index m = a.rows();
  const Eigen::Index k = m - res.rank;
  if (k == 0) return MatZ(0, m);
  // x * a = 0 iff x is an integer combination of the transform rows that map
  // to zero rows of the echelon form; unimodularity makes this basis exact,
  // not merely finite index.
  MatZ ker = res.U.bottomRows(k);
  return hnf_nonzero_rows(ker);
}

std::optional<RowZ> solve_left(const MatZ &a, const RowZ &b) {
  if (b.cols() != a.cols())
    throw std::invalid_argument("solve_left: dimension mismatch");
  HnfResult res = hnf_with_transform(a);
  RowZ work = b;
  RowZ y = RowZ::Zero(a.rows());
  for (int r = 0; r < res.rank; ++r) {
    Eigen::Index c = 0;
    while (c < a.cols() && res.H(r, c).is_zero()) ++c;
    const ZZ &t = work(c);
    if (t.is_zero()) continue;
    if (!divides(res.H(r, c), t)) return std::nullopt;
    ZZ q = divexact(t, res.H(r, c));
    work -= q * res.H.row(r);
    y(r) = q;
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    if (!work(j).is_zero()) return std::nullopt;
  return RowZ(y * res.U);
}

MatZ saturate_rows(const MatZ &a) {
  MatZ b = hnf_nonzero_rows(a);
  const Eigen::Index r = b.rows(), n = b.cols();
  if (r == 0) return MatZ(0, n);
  // Hermite basis of the lattice generated by the columns of b.  Full row
  // rank of b makes it r x r upper triangular with positive diagonal.
  MatZ bt = b.transpose();
  MatZ dmat = hnf_nonzero_rows(bt);
  if (dmat.rows() != r)
    throw std::logic_error("saturate_rows: column lattice lost rank");
  // Rows of D^-T b generate the saturation: a rational row c has c*b integral
  // exactly when c pairs integrally with the column lattice, i.e. lies in the
  // dual of D.  Solve D^T X = b by forward substitution.
  MatQ x(r, n);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      QQ s(b(i, j));
      for (Eigen::Index k = 0; k < i; ++k) s -= QQ(dmat(k, i)) * x(k, j);
      x(i, j) = s / QQ(dmat(i, i));
    }
  }
  MatZ sat(r, n);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!x(i, j).den().is_one())
        throw std::logic_error("saturate_rows: dual transport not integral");
      sat(i, j) = x(i, j).num();
    }
  return hnf(sat);
}

namespace {

// Shared mutable state for the two LLL passes.  The exact Gram matrix is the
// single source of truth; the floating pass keeps its own approximate
// Gram-Schmidt data but applies every row operation to the exact state too.
struct LllState {
  MatZ G;
  MatZ *basis = nullptr;
  MatZ *transform = nullptr;
  Eigen::Index n = 0;

  void row_sub(Eigen::Index k, Eigen::Index l, const ZZ &q) {
    if (q.is_zero()) return;
    G.row(k) -= q * G.row(l);
    G.col(k) -= q * G.col(l);
    if (basis) basis->row(k) -= q * basis->row(l);
    if (transform) transform->row(k) -= q * transform->row(l);
  }

  void row_swap(Eigen::Index k, Eigen::Index l) {
    G.row(k).swap(G.row(l));
    G.col(k).swap(G.col(l));
    if (basis) basis->row(k).swap(basis->row(l));
    if (transform) transform->row(k).swap(transform->row(l));
  }
};

// Integral Gram-Schmidt bookkeeping: d[0] = 1, d[i+1] = determinant of the
// leading (i+1) x (i+1) Gram block, lam(i,j) = d[j+1] * mu(i,j).  All the
// divisions below are exact, which is what makes the all-integer LLL work.
void lll_init_gso(const MatZ &g, MatZ &lam, std::vector<ZZ> &d) {
  const Eigen::Index n = g.rows();
  lam = MatZ::Zero(n, n);
  d.assign(static_cast<size_t>(n) + 1, ZZ(1));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      ZZ u = g(i, j);
      for (Eigen::Index k = 0; k < j; ++k)
        u = divexact(d[k + 1] * u - lam(i, k) * lam(j, k), d[k]);
      if (j < i) {
        lam(i, j) = u;
      } else {
        if (u.sign() <= 0)
          throw std::invalid_argument(
              "lll: Gram matrix not positive definite (dependent rows?)");
        d[i + 1] = u;
      }
    }
  }
}

// Floating pre-pass.  Chooses row operations from an MPFR Gram-Schmidt
// shadow; returns false if the shadow degenerates or the step budget runs
// out.  Either way the exact pass that follows establishes the reduction
// guarantees from scratch.
bool lll_fp_prepass(LllState &st, long delta_num, long delta_den) {
  const Eigen::Index n = st.n;
  if (n < 2) return true;
  long maxd = 1;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      maxd = std::max(maxd, static_cast<long>(st.G(i, j).digit_length()));
  const long digits = maxd + 40;

  std::vector<std::vector<BigFloat>> mu(
      static_cast<size_t>(n),
      std::vector<BigFloat>(static_cast<size_t>(n), BigFloat(0.0, digits)));
  std::vector<BigFloat> bn(static_cast<size_t>(n), BigFloat(0.0, digits));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      BigFloat t(st.G(i, j), digits);
      for (Eigen::Index k = 0; k < j; ++k)
        t -= mu[j][k] * mu[i][k] * bn[k];
      mu[i][j] = t / bn[j];
    }
    BigFloat t(st.G(i, i), digits);
    for (Eigen::Index k = 0; k < i; ++k) t -= mu[i][k] * mu[i][k] * bn[k];
    if (t.sign() <= 0) return false;
    bn[i] = t;
  }

  const BigFloat eta(0.5001, 64);
  const BigFloat deltaf(static_cast<double>(delta_num) /
                            static_cast<double>(delta_den),
                        64);
  auto red = [&](Eigen::Index k, Eigen::Index l) {
    if (!(abs(mu[k][l]) > eta)) return;
    ZZ q = round_to_ZZ(mu[k][l]);
    st.row_sub(k, l, q);
    BigFloat qf(q, digits);
    mu[k][l] -= qf;
    for (Eigen::Index i = 0; i < l; ++i) mu[k][i] -= qf * mu[l][i];
  };

  long budget = 40000 + 40 * static_cast<long>(n) * static_cast<long>(n) * maxd;
  Eigen::Index k = 1;
  while (k < n) {
    if (--budget < 0) return false;
    red(k, k - 1);
    if (bn[k] < (deltaf - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
      st.row_swap(k, k - 1);
      for (Eigen::Index j = 0; j < k - 1; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      BigFloat m = mu[k][k - 1];
      BigFloat bk = bn[k] + m * m * bn[k - 1];
      if (bk.sign() <= 0) return false;
      mu[k][k - 1] = m * bn[k - 1] / bk;
      bn[k] = bn[k - 1] * bn[k] / bk;
      bn[k - 1] = bk;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        BigFloat t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      k = (k > 1) ? k - 1 : 1;
    } else {
      for (Eigen::Index l = k - 2; l >= 0; --l) red(k, l);
      ++k;
    }
  }
  return true;
}

void lll_exact(LllState &st, long delta_num, long delta_den) {
  const Eigen::Index n = st.n;
  if (n < 2) return;
  MatZ lam;
  std::vector<ZZ> d;
  lll_init_gso(st.G, lam, d);
  const ZZ dnum(delta_num), dden(delta_den);

  auto red = [&](Eigen::Index k, Eigen::Index l) {
    if (abs(lam(k, l)) * ZZ(2) <= d[l + 1]) return;
    ZZ q = rdiv_q(lam(k, l), d[l + 1]);
    st.row_sub(k, l, q);
    lam(k, l) -= q * d[l + 1];
    for (Eigen::Index i = 0; i < l; ++i) lam(k, i) -= q * lam(l, i);
  };

  Eigen::Index k = 1;
  while (k < n) {
    red(k, k - 1);
    const ZZ lkk = lam(k, k - 1);
    if (dden * (d[k + 1] * d[k - 1]) < dnum * d[k] * d[k] - dden * lkk * lkk) {
      st.row_swap(k, k - 1);
      for (Eigen::Index j = 0; j + 1 < k; ++j) std::swap(lam(k, j), lam(k - 1, j));
      const ZZ lamv = lam(k, k - 1);
      const ZZ bv = divexact(d[k - 1] * d[k + 1] + lamv * lamv, d[k]);
      for (Eigen::Index i = k + 1; i < n; ++i) {
        ZZ t = lam(i, k);
        lam(i, k) = divexact(d[k + 1] * lam(i, k - 1) - lamv * t, d[k]);
        lam(i, k - 1) = divexact(bv * t + lamv * lam(i, k), d[k + 1]);
      }
      d[k] = bv;
      k = (k > 1) ? k - 1 : 1;
    } else {
      for (Eigen::Index l = k - 2; l >= 0; --l) red(k, l);
      ++k;
    }
  }
}

void check_delta(long delta_num, long delta_den) {
  if (delta_den <= 0 || 4 * delta_num <= delta_den || delta_num > delta_den)
    throw std::invalid_argument("lll: delta must lie in (1/4, 1]");
}

}  // namespace

MatZ lll(const MatZ &basis, MatZ *transform, long delta_num, long delta_den) {
  check_delta(delta_num, delta_den);
  LllState st;
  st.n = basis.rows();
  MatZ b = basis;
  MatZ u;
  st.basis = &b;
  if (transform) {
    u = MatZ::Identity(st.n, st.n);
    st.transform = &u;
  }
  st.G = b * b.transpose();
  lll_fp_prepass(st, delta_num, delta_den);
  lll_exact(st, delta_num, delta_den);
  if (transform) *transform = u;
  return b;
}

MatZ lll_gram(const MatZ &gram, MatZ &transform, long delta_num,
              long delta_den) {
  check_delta(delta_num, delta_den);
  if (gram.rows() != gram.cols())
    throw std::invalid_argument("lll_gram: matrix not square");
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (gram(i, j) != gram(j, i))
        throw std::invalid_argument("lll_gram: matrix not symmetric");
  LllState st;
  st.n = gram.rows();
  st.G = gram;
  MatZ u = MatZ::Identity(st.n, st.n);
  st.transform = &u;
  lll_fp_prepass(st, delta_num, delta_den);
  lll_exact(st, delta_num, delta_den);
  transform = u;
  return st.G;
}

bool is_lll_reduced_gram(const MatZ &gram, long delta_num, long delta_den) {
  check_delta(delta_num, delta_den);
  const Eigen::Index n = gram.rows();
  if (n < 2) return true;
  MatZ lam;
  std::vector<ZZ> d;
  lll_init_gso(gram, lam, d);
  const ZZ dnum(delta_num), dden(delta_den);
  for (Eigen::Index k = 1; k < n; ++k) {
    for (Eigen::Index l = 0; l < k; ++l)
      if (abs(lam(k, l)) * ZZ(2) > d[l + 1]) return false;
    const ZZ &lkk = lam(k, k - 1);
    if (dden * (d[k + 1] * d[k - 1]) < dnum * d[k] * d[k] - dden * lkk * lkk)
      return false;
  }
  return true;
}

bool is_lll_reduced(const MatZ &basis, long delta_num, long delta_den) {
  MatZ g = basis * basis.transpose();
  return is_lll_reduced_gram(g, delta_num, delta_den);
}

}  // namespace forge
