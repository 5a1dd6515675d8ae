#pragma once

// Integer lattices, always in row convention: a matrix stands for the set of
// integer combinations of its rows.  Everything here is exact; the one
// floating-point routine (the LLL pre-pass) only chooses unimodular row
// operations, so a wrong choice can slow the exact pass down but can never
// change the lattice or the final reduced basis guarantees.

#include <optional>

#include "forge/matrix.hpp"

namespace forge {

struct HnfResult {
  MatZ H;    // row echelon, pivots positive, entries above a pivot lie in [0, pivot)
  MatZ U;    // unimodular, U * A = H
  int rank;  // number of nonzero rows of H; zero rows are at the bottom
};

HnfResult hnf_with_transform(const MatZ &a);
MatZ hnf(const MatZ &a);

// Basis (possibly with zero rows removed) of the full row space lattice.
MatZ hnf_nonzero_rows(const MatZ &a);

// Rows x with x * a = 0.  The result is a basis of the full kernel sublattice
// of Z^rows(a), not merely a finite-index subgroup of it.
MatZ left_kernel(const MatZ &a);

// Integer solution of x * a = b if one exists.
std::optional<RowZ> solve_left(const MatZ &a, const RowZ &b);

// Basis of (Q-span of the rows of a) intersected with Z^cols(a).  Computed
// from the Hermite form of the column lattice: if B has full row rank r and
// D is the r x r Hermite basis of the lattice generated by the columns of B,
// then the rows of D^-T B generate the saturation.
MatZ saturate_rows(const MatZ &a);

// LLL with parameter delta = delta_num / delta_den, default 3/4.  Input rows
// must be linearly independent.  The returned basis spans the same lattice;
// if transform is non-null it receives U with U * basis_in = basis_out.
MatZ lll(const MatZ &basis, MatZ *transform = nullptr, long delta_num = 3,
         long delta_den = 4);

// LLL driven purely by a symmetric positive definite Gram matrix.  Returns
// the reduced Gram U G U^T and the unimodular U that achieves it.
MatZ lll_gram(const MatZ &gram, MatZ &transform, long delta_num = 3,
              long delta_den = 4);

bool is_lll_reduced(const MatZ &basis, long delta_num = 3, long delta_den = 4);
bool is_lll_reduced_gram(const MatZ &gram, long delta_num = 3,
                         long delta_den = 4);

}  // namespace forge
