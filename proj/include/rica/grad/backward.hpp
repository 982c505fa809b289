// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_GRAD_BACKWARD_HPP_
#define RICA_GRAD_BACKWARD_HPP_

#include <vector>

#include "rica/matcore/dense_matrix.hpp"
#include "rica/model/forward.hpp"
#include "rica/model/params.hpp"

namespace rica {

struct BatchResult {
  double mean_nll = 0.0;
  ParamBlock grad;  // gradient of the batch-mean NLL
};

// Backpropagation through time over a batch of equal-length sequences,
// processed in lockstep: each timestep touches the whole batch as N x H and
// N x D matrices, so the inner loops are plain matrix products. Every
// reduction runs over batch rows in ascending order, which keeps results
// bit-identical for a fixed batch ordering regardless of thread count.
//
// masks[n] is the init-network dropout mask for sequence n and must match
// the mask used when the forward NLL is evaluated elsewhere.
BatchResult batch_backward(const ModelParams& p, const ModelOptions& opts,
                           const std::vector<DenseMatrix>& batch,
                           const std::vector<DropoutMask>& masks);

// Mean NLL over the batch with the given masks, no gradient.
double batch_mean_nll(const ModelParams& p, const ModelOptions& opts,
                      const std::vector<DenseMatrix>& batch,
                      const std::vector<DropoutMask>& masks);

// d log|det W| / dW = inverse(W)^T
DenseMatrix log_abs_det_grad(const DenseMatrix& w);

// Scales the block in place so its global L2 norm is at most max_norm.
// Returns the norm before clipping.
double clip_global_norm(ParamBlock& g, double max_norm);

}  // namespace rica

#endif  // RICA_GRAD_BACKWARD_HPP_
