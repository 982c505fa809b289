// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "rica/synth/sim_config.hpp"
#include "rica/train/train_config.hpp"

namespace rica {

// "key = value" per line, '#' starts a comment, unknown keys rejected.
// Vectors look like [1, 2, 3], matrices like [[1, 2], [3, 4]], both on a
// single line. State covariances arrive as cov_0 .. cov_{K-1}.
TrainConfig parse_train_config(const std::string& text);
SimConfig parse_sim_config(const std::string& text);

// Inverse of the parsers; parse(render(c)) reproduces c exactly (doubles
// are printed with 17 significant digits).
std::string render_train_config(const TrainConfig& cfg);
std::string render_sim_config(const SimConfig& cfg);

}  // namespace rica
