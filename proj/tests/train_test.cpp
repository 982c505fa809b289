// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "rica/errors.hpp"
#include "rica/matcore/rng.hpp"
#include "rica/train/fit.hpp"
#include "rica/train/preprocess.hpp"
#include "rica/train/rmsprop.hpp"
#include "support/oracles.hpp"

using rica::DenseMatrix;
using rica::Error;
using rica::ErrorCode;
using rica::ModelParams;
using rica::OptimizerState;
using rica::ParamBlock;
using rica::RngStream;
using rica::TrainConfig;

namespace {

TrainConfig tiny_config() {
  TrainConfig cfg;
  cfg.n_components = 2;
  cfg.hidden_units = 4;
  cfg.mlp_hidden = 3;
  cfg.window = 3;
  cfg.batch_size = 8;
  cfg.epochs = 2;
  cfg.learning_rate = 1e-3;
  cfg.seed = 5;
  return cfg;
}

std::vector<DenseMatrix> toy_subjects(std::size_t n_subjects, std::size_t len,
                                      std::size_t dim, std::uint64_t seed) {
  RngStream rng(seed, rica::stream_id::generic(30));
  std::vector<DenseMatrix> out;
  for (std::size_t s = 0; s < n_subjects; ++s) {
    DenseMatrix x(len, dim);
    for (double& v : x.data()) v = rng.logistic(0.0, 1.0);
    out.push_back(std::move(x));
  }
  return out;
}

bool params_equal(const ModelParams& a, const ModelParams& b) {
  bool equal = true;
  std::vector<const DenseMatrix*> av, bv;
  for_each_array(a, [&av](const char*, const DenseMatrix& m) {
    av.push_back(&m);
  });
  for_each_array(b, [&bv](const char*, const DenseMatrix& m) {
    bv.push_back(&m);
  });
  for (std::size_t k = 0; k < av.size(); ++k) {
    if (av[k]->data() != bv[k]->data()) equal = false;
  }
  return equal;
}

}  // namespace

TEST_CASE("detrend removes polynomial trends") {
  // constant, degree 0
  std::vector<double> flat(50, 3.25);
  for (double v : rica::detrend(flat, 0)) {
    CHECK(std::fabs(v) < 1e-12);
  }

  // exact quartic, degree 4
  std::vector<double> quartic(80);
  for (std::size_t i = 0; i < quartic.size(); ++i) {
    const double t = static_cast<double>(i);
    quartic[i] = 2.0 - 0.3 * t + 0.02 * t * t - 1e-4 * t * t * t +
                 2e-6 * t * t * t * t;
  }
  for (double v : rica::detrend(quartic, 4)) {
    CHECK(std::fabs(v) < 1e-8);
  }

  // noisy line vs an independent QR fit oracle
  RngStream rng(6, rica::stream_id::generic(30));
  std::vector<double> noisy(60);
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    noisy[i] = 0.5 * static_cast<double>(i) - 4.0 + rng.normal();
  }
  const std::vector<double> fit = testsupport::qr_polyfit(noisy, 1);
  const std::vector<double> got = rica::detrend(noisy, 1);
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    CHECK(got[i] == doctest::Approx(noisy[i] - fit[i]).epsilon(1e-9));
  }

  CHECK_THROWS_AS(rica::detrend(std::vector<double>(3, 1.0), 3), Error);
  try {
    rica::detrend(std::vector<double>(3, 1.0), 5);
    FAIL("expected DegreeTooHigh");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeTooHigh);
  }
}

TEST_CASE("variance_normalize hits unit variance and keeps the mean") {
  std::vector<double> series{1.0, 5.0, 1.0, 5.0, 1.0, 5.0, 1.0, 5.0};
  // sample variance of alternating 1,5 around mean 3 is 32/7
  std::vector<double> out = rica::variance_normalize(series);
  double mean = 0.0;
  for (double v : out) mean += v;
  mean /= static_cast<double>(out.size());
  CHECK(mean == doctest::Approx(3.0).epsilon(1e-12));
  double ss = 0.0;
  for (double v : out) ss += (v - mean) * (v - mean);
  CHECK(ss / (out.size() - 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  RngStream rng(7, rica::stream_id::generic(30));
  std::vector<double> noise(200);
  for (double& v : noise) v = 3.0 * rng.normal() + 10.0;
  out = rica::variance_normalize(noise);
  mean = 0.0;
  for (double v : out) mean += v;
  mean /= static_cast<double>(out.size());
  double in_mean = 0.0;
  for (double v : noise) in_mean += v;
  in_mean /= static_cast<double>(noise.size());
  CHECK(mean == doctest::Approx(in_mean).epsilon(1e-12));
  ss = 0.0;
  for (double v : out) ss += (v - mean) * (v - mean);
  CHECK(ss / (out.size() - 1.0) == doctest::Approx(1.0).epsilon(1e-10));

  try {
    rica::variance_normalize(std::vector<double>(10, 2.5));
    FAIL("expected ZeroVariance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVariance);
  }
  CHECK_THROWS_AS(rica::variance_normalize({1.0}), Error);
}

TEST_CASE("window slicing: counts, starts and contents") {
  RngStream rng(8, rica::stream_id::generic(30));
  DenseMatrix seq(10, 2);
  for (double& v : seq.data()) v = rng.uniform();

  auto one = rica::window(DenseMatrix(5, 3, 1.0), 5, 1);
  CHECK(one.size() == 1);

  CHECK(rica::window_count(249, 20, 1) == 230);

  auto slices = rica::window(seq, 4, 3);
  REQUIRE(slices.size() == 3);  // starts 0, 3, 6
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(slices[k](i, j) == seq(k * 3 + i, j));
      }
    }
  }

  try {
    rica::window(seq, 11, 1);
    FAIL("expected WindowTooLong");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowTooLong);
  }
}

TEST_CASE("rmsprop_step: frozen single-step arithmetic") {
  RngStream rng(1, rica::stream_id::kInit);
  ModelParams p = rica::init_params(1, 1, 1, rng);
  for_each_array(p, [](const char*, DenseMatrix& m) { m.fill(0.0); });
  p.U_r(0, 0) = 1.0;

  TrainConfig cfg;
  cfg.n_components = 1;
  cfg.l2_w = 0.0;
  OptimizerState opt = OptimizerState::fresh(p, cfg);

  ParamBlock g = rica::zeros_like(p);
  SUBCASE("zero gradient leaves parameters untouched") {
    const double before = p.U_r(0, 0);
    rica::rmsprop_step(p, g, opt, cfg);
    CHECK(p.U_r(0, 0) == before);
  }

  SUBCASE("unit gradient moves by lr / (sqrt(0.1) + eps)") {
    g.U_r(0, 0) = 1.0;
    rica::rmsprop_step(p, g, opt, cfg);
    CHECK(p.U_r(0, 0) - 1.0 ==
          doctest::Approx(-3.1622775601683825e-04).epsilon(1e-12));
  }

  SUBCASE("L2 term alone drives W with effective gradient 2 lambda W") {
    cfg.l2_w = 0.002;
    p.W(0, 0) = 1.0;
    rica::rmsprop_step(p, g, opt, cfg);
    // effective g = 0.004; delta = -lr * g / (sqrt(0.1 g^2) + eps)
    CHECK(p.W(0, 0) - 1.0 ==
          doctest::Approx(-3.1622526603660204e-04).epsilon(1e-12));
    CHECK(opt.ms.W(0, 0) == doctest::Approx(0.1 * 0.004 * 0.004).epsilon(1e-12));
  }
}

TEST_CASE("rmsprop_step: L2 decay strictly shrinks an untrained W") {
  RngStream rng(2, rica::stream_id::kInit);
  ModelParams p = rica::init_params(3, 2, 2, rng);
  TrainConfig cfg;
  cfg.n_components = 3;
  cfg.l2_w = 0.002;
  OptimizerState opt = OptimizerState::fresh(p, cfg);
  ParamBlock g = rica::zeros_like(p);
  const double before = rica::frobenius_norm(p.W);
  rica::rmsprop_step(p, g, opt, cfg);
  CHECK(rica::frobenius_norm(p.W) < before);
}

TEST_CASE("rmsprop_step rejects non-finite updates") {
  RngStream rng(3, rica::stream_id::kInit);
  ModelParams p = rica::init_params(2, 2, 2, rng);
  TrainConfig cfg;
  cfg.n_components = 2;
  OptimizerState opt = OptimizerState::fresh(p, cfg);
  ParamBlock g = rica::zeros_like(p);
  g.W(0, 0) = std::numeric_limits<double>::infinity();
  try {
    rica::rmsprop_step(p, g, opt, cfg);
    FAIL("expected NonFiniteUpdate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteUpdate);
  }
}

TEST_CASE("TrainConfig validation") {
  TrainConfig cfg = tiny_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.n_components = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = tiny_config();
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = tiny_config();
  cfg.dropout_keep = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = tiny_config();
  cfg.dropout_keep = 1.2;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("fit with zero epochs returns the seeded initialization") {
  TrainConfig cfg = tiny_config();
  cfg.epochs = 0;
  auto subjects = toy_subjects(2, 12, 2, 100);

  int final_snapshots = 0;
  auto res = rica::fit(cfg, subjects, [&](const rica::TrainSnapshot& snap) {
    CHECK(snap.final_snapshot);
    CHECK(snap.loss_history.empty());
    ++final_snapshots;
  });
  CHECK(final_snapshots == 1);
  CHECK(res.loss_history.empty());

  RngStream init_rng(cfg.seed, rica::stream_id::kInit);
  ModelParams expect = rica::init_params(cfg.n_components, cfg.hidden_units,
                                         cfg.mlp_hidden, init_rng);
  CHECK(params_equal(res.params, expect));
}

TEST_CASE("fit decreases the NLL on a toy static dataset") {
  TrainConfig cfg;
  cfg.n_components = 2;
  cfg.hidden_units = 4;
  cfg.mlp_hidden = 4;
  cfg.window = 1;
  cfg.batch_size = 64;
  cfg.epochs = 30;
  cfg.learning_rate = 2e-3;
  cfg.dropout_keep = 1.0;
  cfg.seed = 17;
  auto subjects = toy_subjects(1, 400, 2, 200);

  auto res = rica::fit(cfg, subjects);
  REQUIRE(res.loss_history.size() == 30);
  CHECK(res.loss_history.back() < res.loss_history.front());
  for (double v : res.loss_history) CHECK(std::isfinite(v));
}

TEST_CASE("fit is bit-reproducible for a fixed config and seed") {
  TrainConfig cfg = tiny_config();
  cfg.epochs = 3;
  auto subjects = toy_subjects(2, 14, 2, 300);

  auto a = rica::fit(cfg, subjects);
  auto b = rica::fit(cfg, subjects);
  CHECK(a.loss_history == b.loss_history);
  CHECK(params_equal(a.params, b.params));
}

TEST_CASE("interrupted-and-resumed fit matches the uninterrupted run") {
  TrainConfig cfg = tiny_config();
  cfg.epochs = 6;
  auto subjects = toy_subjects(2, 14, 2, 300);

  auto full = rica::fit(cfg, subjects);

  // capture epoch 3 via the sink, then restart from that state
  ModelParams mid_params;
  OptimizerState mid_opt;
  std::vector<double> mid_history;
  rica::fit(cfg, subjects, [&](const rica::TrainSnapshot& snap) {
    if (!snap.final_snapshot && snap.opt.epoch == 3) {
      mid_params = snap.params;
      mid_opt = snap.opt;
      mid_history = snap.loss_history;
    }
  });
  REQUIRE(mid_history.size() == 3);

  auto resumed = rica::fit_from(cfg, subjects, mid_params, mid_opt,
                                mid_history, {});
  CHECK(resumed.loss_history == full.loss_history);
  CHECK(params_equal(resumed.params, full.params));
}

TEST_CASE("fit aborts through the sink when the unmixing degenerates") {
  TrainConfig cfg = tiny_config();
  cfg.epochs = 4;
  auto subjects = toy_subjects(1, 12, 2, 400);

  RngStream init_rng(cfg.seed, rica::stream_id::kInit);
  ModelParams bad = rica::init_params(cfg.n_components, cfg.hidden_units,
                                      cfg.mlp_hidden, init_rng);
  bad.W.fill(0.0);  // exactly singular from the first batch
  OptimizerState opt = OptimizerState::fresh(bad, cfg);

  int finals = 0;
  try {
    rica::fit_from(cfg, subjects, bad, opt, {},
                   [&](const rica::TrainSnapshot& snap) {
                     if (snap.final_snapshot) ++finals;
                   });
    FAIL("expected SingularUnmixing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularUnmixing);
  }
  CHECK(finals == 1);
}

TEST_CASE("early stopping halts a stalled run") {
  TrainConfig cfg = tiny_config();
  cfg.epochs = 200;
  cfg.learning_rate = 1e-9;  // effectively frozen, improvement ~ 0
  cfg.early_stop = true;
  auto subjects = toy_subjects(1, 10, 2, 500);
  auto res = rica::fit(cfg, subjects);
  CHECK(res.loss_history.size() < 200);
  CHECK(res.loss_history.size() >= 21);
}
