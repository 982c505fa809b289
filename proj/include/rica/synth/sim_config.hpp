// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"

namespace rica {

// Cohort generator settings. Structural members (transition matrices, initial
// distribution, state covariances, mixing) may be left empty and are then
// built by fill_defaults() from the seed, so a config file only has to name
// what it wants to override.
struct SimConfig {
  std::size_t n_sources = 0;  // required
  std::size_t n_states = 5;
  std::size_t timepoints = 480;
  double tr = 2.0;
  std::size_t subjects_per_group = 25;

  DenseMatrix p_a;  // K x K row-stochastic; default off-diagonal mass 0.1 each
  DenseMatrix p_b;  // K x K row-stochastic; default sticky, diagonal 0.9
  std::vector<double> pi0;               // default uniform
  std::vector<DenseMatrix> covariances;  // K of M x M SPD
  DenseMatrix mixing;                    // M x M; empty means draw one

  double hrf_peak_delay = 6.0;
  double hrf_undershoot_delay = 16.0;
  double hrf_peak_disp = 1.0;
  double hrf_undershoot_disp = 1.0;
  double hrf_ratio = 1.0 / 6.0;
  std::size_t hrf_length = 16;  // kernel samples; 0 skips convolution entirely
  double peak_delay_lo = 5.0;   // per-subject jitter ranges, seconds
  double peak_delay_hi = 7.0;
  double undershoot_delay_lo = 14.0;
  double undershoot_delay_hi = 18.0;

  double noise_std = 0.1;
  double condition_bound = 10.0;
  std::uint64_t seed = 0;

  void fill_defaults();
  void validate() const;
};

}  // namespace rica
