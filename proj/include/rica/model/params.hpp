// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_MODEL_PARAMS_HPP_
#define RICA_MODEL_PARAMS_HPP_

#include <cstddef>

#include "rica/matcore/dense_matrix.hpp"
#include "rica/matcore/rng.hpp"

namespace rica {

// One array per learnable parameter; bias vectors are stored n x 1. Gradients
// and optimizer accumulators reuse the same layout so that the three stay
// shape-congruent by construction.
struct ParamBlock {
  DenseMatrix W;        // D x D unmixing
  DenseMatrix U_r;      // H x H recurrent weights
  DenseMatrix U_i;      // H x D input weights
  DenseMatrix b;        // H x 1
  DenseMatrix W_mu;     // D x H output means
  DenseMatrix W_sigma;  // D x H output raw scales
  DenseMatrix A1;       // Hm x D init-net first layer
  DenseMatrix b1;       // Hm x 1
  DenseMatrix A2;       // H x Hm init-net second layer
  DenseMatrix b2;       // H x 1

  bool all_finite() const;
};

// Visits every array with its canonical name, in a fixed order shared by the
// optimizer, checkpoints, and the gradient checker.
template <typename Block, typename Fn>
void for_each_array(Block& block, Fn&& fn) {
  fn("W", block.W);
  fn("U_r", block.U_r);
  fn("U_i", block.U_i);
  fn("b", block.b);
  fn("W_mu", block.W_mu);
  fn("W_sigma", block.W_sigma);
  fn("A1", block.A1);
  fn("b1", block.b1);
  fn("A2", block.A2);
  fn("b2", block.b2);
}

struct ModelParams : ParamBlock {
  std::size_t dim = 0;        // D, source dim == data dim (square unmixing)
  std::size_t hidden = 0;     // H
  std::size_t mlp_hidden = 0; // Hm
};

// W starts at identity plus uniform(-0.01, 0.01) noise so |det W| is well
// conditioned at step 0; the other weights use uniform(-a, a) with
// a = sqrt(6 / (fan_in + fan_out)); biases start at zero.
ModelParams init_params(std::size_t dim, std::size_t hidden,
                        std::size_t mlp_hidden, RngStream& rng);

// Zeroed block with shapes congruent to p.
ParamBlock zeros_like(const ModelParams& p);

struct ModelOptions {
  double sigma_floor = 1e-4;
  double dropout_keep = 0.8;
  bool leaky_first_step = true;
};

}  // namespace rica

#endif  // RICA_MODEL_PARAMS_HPP_
