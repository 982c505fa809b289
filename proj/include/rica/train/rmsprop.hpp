// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_TRAIN_RMSPROP_HPP_
#define RICA_TRAIN_RMSPROP_HPP_

#include <cstddef>

#include "rica/matcore/rng.hpp"
#include "rica/model/params.hpp"
#include "rica/train/train_config.hpp"

namespace rica {

struct OptimizerState {
  ParamBlock ms;          // running mean-square accumulators
  std::size_t epoch = 0;  // completed epochs
  RngStream rng;          // shuffle + dropout stream, checkpointable

  static OptimizerState fresh(const ModelParams& params,
                              const TrainConfig& cfg);
};

// One RMSProp update in place:
//   v <- rho v + (1 - rho) g^2;  theta <- theta - lr g / (sqrt(v) + eps)
// The W gradient first receives the L2 term 2 lambda W (from the penalty
// lambda sum W^2). Throws NonFiniteUpdate if any parameter leaves the
// finite range.
void rmsprop_step(ModelParams& params, const ParamBlock& grads,
                  OptimizerState& opt, const TrainConfig& cfg);

}  // namespace rica

#endif  // RICA_TRAIN_RMSPROP_HPP_
