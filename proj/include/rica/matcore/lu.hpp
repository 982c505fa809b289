// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_MATCORE_LU_HPP_
#define RICA_MATCORE_LU_HPP_

#include <cstddef>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"

namespace rica {

// Partial-pivoting LU of a square matrix. L (unit diagonal) and U share the
// storage; pivots[k] is the row swapped into position k at step k.
struct LuFactorization {
  DenseMatrix lu;
  std::vector<std::size_t> pivots;
  int sign = 1;  // permutation parity

  std::size_t order() const { return lu.rows(); }

  double log_abs_det() const;
  // sign of det(A), permutation parity times diagonal signs
  double det_sign() const;

  std::vector<double> solve(const std::vector<double>& b) const;
  // column-wise solve: X with A * X = B
  DenseMatrix solve_matrix(const DenseMatrix& b) const;
  DenseMatrix inverse() const;
};

// Throws SingularMatrix when a pivot magnitude drops below 1e-300.
LuFactorization lu_factor(const DenseMatrix& m);

}  // namespace rica

#endif  // RICA_MATCORE_LU_HPP_
