#pragma once

// Eigen dense types over the exact scalars ZZ and QQ.  Eigen only needs
// NumTraits and the ordinary arithmetic operators to drive its generic
// (non-vectorized) kernels, which is exactly what arbitrary-precision
// scalars can provide.  Anything beyond ring arithmetic (norms, pivoting,
// decompositions) is implemented explicitly in lattice.cpp and friends so
// that every rounding decision is ours.

#include <Eigen/Core>

#include "forge/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<forge::ZZ> : GenericNumTraits<forge::ZZ> {
  typedef forge::ZZ Real;
  typedef forge::ZZ NonInteger;
  typedef forge::ZZ Nested;
  typedef forge::ZZ Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 120,
  };
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<forge::QQ> : GenericNumTraits<forge::QQ> {
  typedef forge::QQ Real;
  typedef forge::QQ NonInteger;
  typedef forge::QQ Nested;
  typedef forge::QQ Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 120,
    MulCost = 240,
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace forge {

using MatZ = Eigen::Matrix<ZZ, Eigen::Dynamic, Eigen::Dynamic>;
using VecZ = Eigen::Matrix<ZZ, Eigen::Dynamic, 1>;
using RowZ = Eigen::Matrix<ZZ, 1, Eigen::Dynamic>;

using MatQ = Eigen::Matrix<QQ, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<QQ, Eigen::Dynamic, 1>;
using RowQ = Eigen::Matrix<QQ, 1, Eigen::Dynamic>;

// Small literal builders, mostly for tests and fixtures.
MatZ matz(std::initializer_list<std::initializer_list<long>> rows);
RowZ rowz(std::initializer_list<long> entries);

inline MatQ to_MatQ(const MatZ &a) {
  MatQ b(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) b(i, j) = QQ(a(i, j));
  return b;
}

}  // namespace forge
