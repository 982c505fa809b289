// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "rica/matcore/dense_matrix.hpp"
#include "rica/model/forward.hpp"

namespace rica {

// Directed next-step couplings J(t)[i][j] = d mu_{i,t} / d s_{j,t-1},
// closed form W_mu diag(1 - h_t^2) U_i W^{-1}. per_step[k] is the matrix
// for prediction step k+2 (1-based t), so a T-row sequence yields T-1.
// At t=2 with a leaky first step the first hidden state also depends on
// x_1; the closed form keeps only the direct input path there.
struct JacobianResult {
  std::vector<DenseMatrix> per_step;
  DenseMatrix mean_abs;  // |J| averaged over the returned steps
};

JacobianResult next_step_jacobian(const ModelParams& params,
                                  const ModelOptions& opts,
                                  const DenseMatrix& x_seq);

// |J| averaged over time and subjects, for graph export.
DenseMatrix mean_abs_jacobian(const ModelParams& params,
                              const ModelOptions& opts,
                              const std::vector<DenseMatrix>& subjects);

// rho[i][j] = Pearson correlation between columns i and j of the averaged
// Jacobian: how similarly two components drive everything else.
DenseMatrix connectivity_similarity(const DenseMatrix& jbar);

// Undirected graph weights from rho: negatives clipped to zero (modularity
// needs nonnegative weights), diagonal zeroed.
DenseMatrix similarity_graph(const DenseMatrix& rho);

}  // namespace rica
