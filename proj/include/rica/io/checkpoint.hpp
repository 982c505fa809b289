// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rica/train/rmsprop.hpp"
#include "rica/train/train_config.hpp"

namespace rica {

// Everything needed to continue a run bit for bit: parameters, optimizer
// accumulators, epoch counter, rng state, loss curve, and the config echo.
struct Checkpoint {
  ModelParams params;
  OptimizerState opt;
  std::vector<double> loss_history;
  TrainConfig config;
};

// Same container as write_bundle with magic "RICACP01"; save -> load -> save
// reproduces identical bytes.
void write_checkpoint(const std::string& path, const Checkpoint& cp);
Checkpoint read_checkpoint(const std::string& path);

// Shape compatibility for resuming: component, hidden, and MLP widths must
// match the stored run. Throws ConfigMismatch.
void check_resume_compatible(const TrainConfig& stored,
                             const TrainConfig& requested);

}  // namespace rica
