// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_MATCORE_PCA_HPP_
#define RICA_MATCORE_PCA_HPP_

#include <vector>

#include "rica/matcore/dense_matrix.hpp"

namespace rica {

struct PcaResult {
  DenseMatrix loadings;            // samples x k, columns mean-removed
  DenseMatrix components;          // k x dims, rows are unit eigenvectors
  std::vector<double> eigenvalues; // all dims, descending
};

// Top-k eigenvectors of the column-mean-centered sample covariance (no
// whitening). Each component is sign-flipped so its largest-magnitude entry is
// positive. Loadings are the centered data projected onto the components, then
// column-mean-removed.
PcaResult pca_fit(const DenseMatrix& data, std::size_t k);

}  // namespace rica

#endif  // RICA_MATCORE_PCA_HPP_
