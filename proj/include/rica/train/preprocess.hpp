// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_TRAIN_PREPROCESS_HPP_
#define RICA_TRAIN_PREPROCESS_HPP_

#include <cstddef>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"

namespace rica {

// Subtracts the least-squares polynomial fit of the given degree. The fit
// runs on time rescaled to [-1, 1] so the normal equations stay
// well-conditioned at degree 4.
std::vector<double> detrend(const std::vector<double>& series,
                            std::size_t degree);

// Rescales to unit sample variance (n-1 denominator), keeping the mean.
std::vector<double> variance_normalize(const std::vector<double>& series);

// Applies detrend / variance_normalize to every column of an L x D series.
void detrend_columns(DenseMatrix& x, std::size_t degree);
void variance_normalize_columns(DenseMatrix& x);

// All w x D slices starting at 0, stride, 2*stride, ...
std::vector<DenseMatrix> window(const DenseMatrix& seq, std::size_t w,
                                std::size_t stride);

// Number of slices window() would return.
std::size_t window_count(std::size_t length, std::size_t w,
                         std::size_t stride);

}  // namespace rica

#endif  // RICA_TRAIN_PREPROCESS_HPP_
