// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/train/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include "rica/errors.hpp"
#include "rica/grad/backward.hpp"
#include "rica/train/preprocess.hpp"

namespace rica {

namespace {

constexpr double kGradClipMax = 5.0;
constexpr std::size_t kEarlyStopLag = 20;
constexpr double kEarlyStopRelTol = 1e-6;

void check_dataset(const TrainConfig& cfg,
                   const std::vector<DenseMatrix>& subjects) {
  if (subjects.empty()) {
    throw Error(ErrorCode::InvalidArgument, "fit needs at least one subject");
  }
  for (const DenseMatrix& s : subjects) {
    if (s.cols() != cfg.n_components) {
      throw Error(ErrorCode::InvalidArgument,
                  "subject width does not match n_components");
    }
    if (s.rows() < cfg.window) {
      throw Error(ErrorCode::WindowTooLong,
                  "subject series shorter than the window");
    }
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (n_components == 0) {
    throw Error(ErrorCode::InvalidArgument, "n_components must be set");
  }
  if (hidden_units == 0 || mlp_hidden == 0) {
    throw Error(ErrorCode::InvalidArgument, "hidden sizes must be >= 1");
  }
  if (window == 0 || stride == 0 || batch_size == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "window, stride and batch_size must be >= 1");
  }
  if (!(learning_rate > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "learning_rate must be > 0");
  }
  if (!(l2_w >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "l2_w must be >= 0");
  }
  if (!(rmsprop_decay >= 0.0 && rmsprop_decay < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "rmsprop_decay must be in [0, 1)");
  }
  if (!(rmsprop_eps > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rmsprop_eps must be > 0");
  }
  if (!(sigma_floor > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sigma_floor must be > 0");
  }
  if (!(dropout_keep > 0.0 && dropout_keep <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "dropout_keep must be in (0, 1]");
  }
}

FitResult fit_from(const TrainConfig& cfg,
                   const std::vector<DenseMatrix>& subjects, ModelParams params,
                   OptimizerState opt, std::vector<double> loss_history,
                   const CheckpointSink& sink) {
  cfg.validate();
  check_dataset(cfg, subjects);
  const ModelOptions opts = cfg.model_options();

  // every (subject, window start) pair, shuffled each epoch
  struct Pair {
    std::uint32_t subject;
    std::uint32_t start;
  };
  std::vector<Pair> pairs;
  for (std::size_t s = 0; s < subjects.size(); ++s) {
    const std::size_t count =
        window_count(subjects[s].rows(), cfg.window, cfg.stride);
    for (std::size_t k = 0; k < count; ++k) {
      pairs.push_back({static_cast<std::uint32_t>(s),
                       static_cast<std::uint32_t>(k * cfg.stride)});
    }
  }

  ModelParams good_params = params;
  OptimizerState good_opt = opt;

  auto run_epochs = [&]() {
    std::vector<Pair> perm(pairs);
    std::vector<DenseMatrix> batch;
    std::vector<DropoutMask> masks;
    for (std::size_t e = opt.epoch; e < cfg.epochs; ++e) {
      perm = pairs;
      opt.rng.shuffle(perm);
      double nll_sum = 0.0;
      std::size_t seen = 0;
      for (std::size_t i0 = 0; i0 < perm.size(); i0 += cfg.batch_size) {
        const std::size_t i1 = std::min(i0 + cfg.batch_size, perm.size());
        batch.clear();
        masks.clear();
        for (std::size_t i = i0; i < i1; ++i) {
          const DenseMatrix& subj = subjects[perm[i].subject];
          DenseMatrix slice(cfg.window, subj.cols());
          for (std::size_t r = 0; r < cfg.window; ++r) {
            const double* src = subj.row(perm[i].start + r);
            double* dst = slice.row(r);
            for (std::size_t c = 0; c < subj.cols(); ++c) dst[c] = src[c];
          }
          batch.push_back(std::move(slice));
          masks.push_back(
              DropoutMask::sample(cfg.mlp_hidden, cfg.dropout_keep, opt.rng));
        }
        BatchResult res = batch_backward(params, opts, batch, masks);
        nll_sum += res.mean_nll * static_cast<double>(batch.size());
        seen += batch.size();
        clip_global_norm(res.grad, kGradClipMax);
        rmsprop_step(params, res.grad, opt, cfg);
      }
      loss_history.push_back(nll_sum / static_cast<double>(seen));
      opt.epoch = e + 1;
      good_params = params;
      good_opt = opt;
      if (sink) sink({params, opt, loss_history, false});

      if (cfg.early_stop && loss_history.size() > kEarlyStopLag) {
        const double before =
            loss_history[loss_history.size() - 1 - kEarlyStopLag];
        const double now = loss_history.back();
        if (before - now < kEarlyStopRelTol * std::max(1.0, std::fabs(before)))
          break;
      }
    }
  };

  try {
    run_epochs();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularUnmixing ||
        e.code() == ErrorCode::NonFiniteGradient ||
        e.code() == ErrorCode::NonFiniteUpdate) {
      if (sink) sink({good_params, good_opt, loss_history, true});
    }
    throw;
  }

  if (sink) sink({params, opt, loss_history, true});
  FitResult out;
  out.params = std::move(params);
  out.opt = std::move(opt);
  out.loss_history = std::move(loss_history);
  return out;
}

FitResult fit(const TrainConfig& cfg, const std::vector<DenseMatrix>& subjects,
              const CheckpointSink& sink) {
  cfg.validate();
  RngStream init_rng(cfg.seed, stream_id::kInit);
  ModelParams params =
      init_params(cfg.n_components, cfg.hidden_units, cfg.mlp_hidden, init_rng);
  OptimizerState opt = OptimizerState::fresh(params, cfg);
  return fit_from(cfg, subjects, std::move(params), std::move(opt), {}, sink);
}

}  // namespace rica
