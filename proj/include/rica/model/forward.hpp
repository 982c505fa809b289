// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_MODEL_FORWARD_HPP_
#define RICA_MODEL_FORWARD_HPP_

#include <cstddef>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"
#include "rica/matcore/rng.hpp"
#include "rica/model/params.hpp"

namespace rica {

// log p(s) under the logistic density with location mu and scale sigma.
double logistic_log_density(double s, double mu, double sigma);

// Inverted-dropout mask over the init-network hidden layer. Entries are 0 or
// 1/keep, so applying the mask is a plain elementwise product and evaluation
// mode is just a mask of ones.
struct DropoutMask {
  std::vector<double> scale;

  static DropoutMask ones(std::size_t n);
  static DropoutMask sample(std::size_t n, double keep, RngStream& rng);
};

struct ForwardTrace {
  DenseMatrix h;            // T x H hidden states
  DenseMatrix s;            // T x D unmixed sources, s_t = W x_t
  DenseMatrix mu;           // T x D predicted locations
  DenseMatrix raw_scale;    // T x D pre-softplus scale activations
  DenseMatrix sigma;        // T x D predicted scales
  DenseMatrix log_density;  // T x D per-element density terms
  double log_abs_det_w = 0.0;
  double nll = 0.0;
};

// First hidden state from the two-layer init network on x_1. With
// leaky_first_step off the network sees a zero vector instead, so h_1
// carries no information about the sequence.
std::vector<double> init_state(const ModelParams& p, const ModelOptions& opts,
                               const std::vector<double>& x1,
                               const DropoutMask& mask);

// h_t = tanh(U_r h_{t-1} + U_i x_{t-1} + b)
std::vector<double> rnn_step(const ModelParams& p,
                             const std::vector<double>& h_prev,
                             const std::vector<double>& x_prev);

// Full pass over one sequence; rows of x are timesteps. The mask applies to
// the init network only; pass DropoutMask::ones(p.mlp_hidden) to evaluate.
ForwardTrace forward(const ModelParams& p, const ModelOptions& opts,
                     const DenseMatrix& x, const DropoutMask& mask);

// Evaluation-mode negative log likelihood of one sequence (not averaged).
double sequence_nll(const ModelParams& p, const ModelOptions& opts,
                    const DenseMatrix& x);

}  // namespace rica

#endif  // RICA_MODEL_FORWARD_HPP_
