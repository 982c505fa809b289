// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_TRAIN_FIT_HPP_
#define RICA_TRAIN_FIT_HPP_

#include <functional>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"
#include "rica/model/params.hpp"
#include "rica/train/rmsprop.hpp"
#include "rica/train/train_config.hpp"

namespace rica {

struct FitResult {
  ModelParams params;
  OptimizerState opt;
  std::vector<double> loss_history;  // window-weighted mean NLL per epoch
};

// Passed to the sink after every completed epoch and once at the end (or on
// abort, carrying the last state that finished an epoch cleanly). The sink
// decides how often to actually persist anything.
struct TrainSnapshot {
  const ModelParams& params;
  const OptimizerState& opt;
  const std::vector<double>& loss_history;
  bool final_snapshot;
};

using CheckpointSink = std::function<void(const TrainSnapshot&)>;

// Full training run: init params from cfg.seed, then epochs of
// shuffle-window-batch-backward-update. Deterministic given (cfg, dataset):
// two runs produce bit-identical parameters and loss history.
//
// On SingularUnmixing / NonFiniteGradient / NonFiniteUpdate the sink first
// receives a final snapshot of the last good state, then the error
// propagates.
FitResult fit(const TrainConfig& cfg, const std::vector<DenseMatrix>& subjects,
              const CheckpointSink& sink = {});

// Continues a run from restored state. Epochs already counted in opt.epoch
// go toward cfg.epochs, so resuming a finished run is a no-op.
FitResult fit_from(const TrainConfig& cfg,
                   const std::vector<DenseMatrix>& subjects, ModelParams params,
                   OptimizerState opt, std::vector<double> loss_history,
                   const CheckpointSink& sink = {});

}  // namespace rica

#endif  // RICA_TRAIN_FIT_HPP_
