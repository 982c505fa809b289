// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_TRAIN_TRAIN_CONFIG_HPP_
#define RICA_TRAIN_TRAIN_CONFIG_HPP_

#include <cstddef>
#include <cstdint>

#include "rica/model/params.hpp"

namespace rica {

struct TrainConfig {
  std::size_t n_components = 0;  // required, no default
  std::size_t hidden_units = 100;
  std::size_t mlp_hidden = 100;
  std::size_t window = 20;
  std::size_t stride = 1;
  std::size_t batch_size = 100;
  std::size_t epochs = 500;
  double learning_rate = 1e-4;
  double l2_w = 0.002;
  double rmsprop_decay = 0.9;
  double rmsprop_eps = 1e-8;
  double sigma_floor = 1e-4;
  double dropout_keep = 0.8;
  std::uint64_t seed = 0;
  bool leaky_first_step = true;
  bool early_stop = false;

  void validate() const;  // throws InvalidArgument

  ModelOptions model_options() const {
    ModelOptions o;
    o.sigma_floor = sigma_floor;
    o.dropout_keep = dropout_keep;
    o.leaky_first_step = leaky_first_step;
    return o;
  }
};

}  // namespace rica

#endif  // RICA_TRAIN_TRAIN_CONFIG_HPP_
