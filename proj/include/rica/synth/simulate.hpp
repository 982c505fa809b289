// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"
#include "rica/matcore/rng.hpp"
#include "rica/synth/sim_config.hpp"

namespace rica {

// Markov chain over states 1..K: s_1 ~ pi0, s_{t+1} ~ P[s_t, .].
std::vector<std::uint32_t> sample_state_sequence(const DenseMatrix& p,
                                                 const std::vector<double>& pi0,
                                                 std::size_t t, RngStream& rng);

// e_t = Sigma_{s_t}^{1/2} z_t with z i.i.d. unit-variance Laplace. Heavy
// tails keep the sources non-Gaussian, which separation needs. Returns T x M.
DenseMatrix generate_sources(const std::vector<std::uint32_t>& states,
                             const std::vector<DenseMatrix>& covariances,
                             RngStream& rng);

// Double-gamma hemodynamic response sampled at t = 0, TR, 2TR, ...,
// normalized to unit peak.
std::vector<double> hrf_kernel(double peak_delay, double undershoot_delay,
                               double peak_disp, double undershoot_disp,
                               double ratio, double tr, std::size_t length);

// Causal linear convolution truncated to the input length.
std::vector<double> convolve(const std::vector<double>& x,
                             const std::vector<double>& kernel);

struct GroundTruth {
  std::vector<std::vector<std::uint32_t>> states;  // per subject, 1..K
  std::vector<DenseMatrix> sources;                // per subject, T x M
  std::vector<std::uint8_t> group_labels;          // 0 = group A, 1 = group B
  DenseMatrix mixing;                              // M x M
  SimConfig config;                                // finalized echo
};

struct Cohort {
  std::vector<DenseMatrix> observations;  // per subject, T x M
  GroundTruth truth;
};

// Full pipeline: states -> colored Laplace sources -> per-subject jittered
// HRF -> linear mixing -> Gaussian observation noise. Subjects draw from
// independent streams, so the result does not depend on scheduling.
Cohort simulate_cohort(const SimConfig& cfg);

}  // namespace rica
