// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_MATCORE_SYM_EIG_HPP_
#define RICA_MATCORE_SYM_EIG_HPP_

#include <vector>

#include "rica/matcore/dense_matrix.hpp"

namespace rica {

struct SymEig {
  std::vector<double> eigenvalues;  // descending
  DenseMatrix vectors;              // column j pairs with eigenvalues[j]
};

// Cyclic Jacobi rotations; at most 100 sweeps, stops when the off-diagonal
// Frobenius norm falls below 1e-12 * max(1, ||C||_F). Input must be symmetric
// within 1e-10 (relative to the largest entry).
SymEig sym_eig(const DenseMatrix& c);

}  // namespace rica

#endif  // RICA_MATCORE_SYM_EIG_HPP_
