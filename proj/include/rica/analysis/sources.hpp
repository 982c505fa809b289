// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"
#include "rica/model/params.hpp"

namespace rica {

// Pearson correlation; quiet NaN when either side has zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// s_t = W x_t applied over a full, unwindowed sequence. L x D in, L x D out.
DenseMatrix extract_sources(const ModelParams& params, const DenseMatrix& x_seq);

struct FncResult {
  DenseMatrix values;  // D x D, symmetric, unit diagonal
  // components with a flat time course in at least one subject; those
  // subject contributions are left out of the average
  std::vector<std::uint32_t> flagged;
};

// Component cross-correlation averaged across subjects.
FncResult fnc(const std::vector<DenseMatrix>& sources_per_subject);

// Pearson r between every trace column and the subject's state sequence,
// one row per subject. Flat columns give NaN ("empty"), not an error.
DenseMatrix state_correlation(
    const std::vector<DenseMatrix>& traces,
    const std::vector<std::vector<std::uint32_t>>& states);

}  // namespace rica
