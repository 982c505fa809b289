// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/train/rmsprop.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "rica/errors.hpp"

namespace rica {

OptimizerState OptimizerState::fresh(const ModelParams& params,
                                     const TrainConfig& cfg) {
  OptimizerState s;
  s.ms = zeros_like(params);
  s.epoch = 0;
  s.rng = RngStream(cfg.seed, stream_id::kTrain);
  return s;
}

void rmsprop_step(ModelParams& params, const ParamBlock& grads,
                  OptimizerState& opt, const TrainConfig& cfg) {
  struct Entry {
    const char* name;
    DenseMatrix* theta;
    const DenseMatrix* g;
    DenseMatrix* ms;
  };
  std::vector<Entry> entries;
  for_each_array(params, [&entries](const char* name, DenseMatrix& m) {
    entries.push_back({name, &m, nullptr, nullptr});
  });
  {
    std::size_t k = 0;
    for_each_array(grads, [&entries, &k](const char*, const DenseMatrix& m) {
      entries[k++].g = &m;
    });
    k = 0;
    for_each_array(opt.ms, [&entries, &k](const char*, DenseMatrix& m) {
      entries[k++].ms = &m;
    });
  }

  const double rho = cfg.rmsprop_decay;
  const double lr = cfg.learning_rate;
  const double eps = cfg.rmsprop_eps;
  for (Entry& e : entries) {
    if (!e.theta->same_shape(*e.g) || !e.theta->same_shape(*e.ms)) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("rmsprop_step: shape mismatch for ") + e.name);
    }
    const bool is_w = std::strcmp(e.name, "W") == 0;
    double* th = e.theta->data().data();
    const double* gv = e.g->data().data();
    double* ms = e.ms->data().data();
    for (std::size_t i = 0; i < e.theta->size(); ++i) {
      double g = gv[i];
      if (is_w) g += 2.0 * cfg.l2_w * th[i];
      ms[i] = rho * ms[i] + (1.0 - rho) * g * g;
      th[i] -= lr * g / (std::sqrt(ms[i]) + eps);
    }
    if (!e.theta->all_finite()) {
      throw Error(ErrorCode::NonFiniteUpdate,
                  std::string("update for ") + e.name + " is not finite");
    }
  }
}

}  // namespace rica
