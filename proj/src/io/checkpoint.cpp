// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/io/checkpoint.hpp"

#include <cerrno>
#include <cstdlib>
#include <string>

#include "rica/errors.hpp"
#include "rica/io/bundle.hpp"
#include "rica/io/config.hpp"

namespace rica {

namespace {

constexpr char kCheckpointMagic[] = "RICACP01";

std::uint64_t meta_u64(const MatrixBundle& b, const std::string& key) {
  const std::string& v = b.meta(key);
  char* end = nullptr;
  errno = 0;
  const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || errno != 0 || end != v.c_str() + v.size()) {
    throw Error(ErrorCode::TypeError,
                "metadata '" + key + "' is not an integer");
  }
  return out;
}

DenseMatrix shaped(const MatrixBundle& b, const std::string& name,
                   std::size_t rows, std::size_t cols) {
  DenseMatrix m = b.matrix(name);
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::ConfigMismatch,
                "array '" + name + "' has shape " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()) + ", expected " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
  return m;
}

}  // namespace

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
  MatrixBundle b;
  for_each_array(cp.params, [&b](const char* name, const DenseMatrix& m) {
    b.add(name, m);
  });
  for_each_array(cp.opt.ms, [&b](const char* name, const DenseMatrix& m) {
    b.add(std::string("ms_") + name, m);
  });
  b.add("loss_history", cp.loss_history);
  b.set_meta("epoch", std::to_string(cp.opt.epoch));
  b.set_meta("rng_seed", std::to_string(cp.opt.rng.seed()));
  b.set_meta("rng_stream", std::to_string(cp.opt.rng.stream()));
  b.set_meta("rng_counter", std::to_string(cp.opt.rng.counter()));
  b.set_meta("config", render_train_config(cp.config));
  io_detail::write_binary_file(path,
                               io_detail::serialize_bundle(b, kCheckpointMagic));
}

Checkpoint read_checkpoint(const std::string& path) {
  const MatrixBundle b = io_detail::parse_bundle(
      io_detail::read_binary_file(path), kCheckpointMagic);

  Checkpoint cp;
  cp.config = parse_train_config(b.meta("config"));
  const std::size_t d = cp.config.n_components;
  const std::size_t h = cp.config.hidden_units;
  const std::size_t hm = cp.config.mlp_hidden;

  cp.params.dim = d;
  cp.params.hidden = h;
  cp.params.mlp_hidden = hm;
  // canonical shapes, checked against the stored config
  cp.params.W = shaped(b, "W", d, d);
  cp.params.U_r = shaped(b, "U_r", h, h);
  cp.params.U_i = shaped(b, "U_i", h, d);
  cp.params.b = shaped(b, "b", h, 1);
  cp.params.W_mu = shaped(b, "W_mu", d, h);
  cp.params.W_sigma = shaped(b, "W_sigma", d, h);
  cp.params.A1 = shaped(b, "A1", hm, d);
  cp.params.b1 = shaped(b, "b1", hm, 1);
  cp.params.A2 = shaped(b, "A2", h, hm);
  cp.params.b2 = shaped(b, "b2", h, 1);

  cp.opt.ms = zeros_like(cp.params);
  for_each_array(cp.opt.ms, [&](const char* name, DenseMatrix& m) {
    m = shaped(b, std::string("ms_") + name, m.rows(), m.cols());
  });
  cp.opt.epoch = meta_u64(b, "epoch");
  cp.opt.rng = RngStream::restore(meta_u64(b, "rng_seed"),
                                  meta_u64(b, "rng_stream"),
                                  meta_u64(b, "rng_counter"));
  cp.loss_history = b.vec("loss_history");
  return cp;
}

void check_resume_compatible(const TrainConfig& stored,
                             const TrainConfig& requested) {
  if (stored.n_components != requested.n_components ||
      stored.hidden_units != requested.hidden_units ||
      stored.mlp_hidden != requested.mlp_hidden) {
    throw Error(ErrorCode::ConfigMismatch,
                "checkpoint was trained with a different architecture");
  }
}

}  // namespace rica
