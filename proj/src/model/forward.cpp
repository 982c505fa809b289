// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/model/forward.hpp"

#include <cmath>

#include "rica/errors.hpp"
#include "rica/matcore/lu.hpp"
#include "rica/model/activations.hpp"

namespace rica {

double logistic_log_density(double s, double mu, double sigma) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::NonPositiveScale,
                "logistic density needs a positive scale");
  }
  const double z = (s - mu) / sigma;
  return -z - std::log(sigma) - 2.0 * softplus(-z);
}

DropoutMask DropoutMask::ones(std::size_t n) {
  DropoutMask m;
  m.scale.assign(n, 1.0);
  return m;
}

DropoutMask DropoutMask::sample(std::size_t n, double keep, RngStream& rng) {
  if (!(keep > 0.0 && keep <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "dropout keep must be in (0, 1]");
  }
  DropoutMask m;
  m.scale.assign(n, 0.0);
  const double inv = 1.0 / keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < keep) m.scale[i] = inv;
  }
  return m;
}

std::vector<double> init_state(const ModelParams& p, const ModelOptions& opts,
                               const std::vector<double>& x1,
                               const DropoutMask& mask) {
  if (x1.size() != p.dim || mask.scale.size() != p.mlp_hidden) {
    throw Error(ErrorCode::InvalidArgument, "init_state: shape mismatch");
  }
  std::vector<double> v(p.mlp_hidden);
  for (std::size_t i = 0; i < p.mlp_hidden; ++i) {
    double acc = p.b1(i, 0);
    if (opts.leaky_first_step) {
      const double* a = p.A1.row(i);
      for (std::size_t j = 0; j < p.dim; ++j) acc += a[j] * x1[j];
    }
    v[i] = mask.scale[i] * softplus(acc);
  }
  std::vector<double> h(p.hidden);
  for (std::size_t i = 0; i < p.hidden; ++i) {
    double acc = p.b2(i, 0);
    const double* a = p.A2.row(i);
    for (std::size_t j = 0; j < p.mlp_hidden; ++j) acc += a[j] * v[j];
    h[i] = std::tanh(acc);
  }
  return h;
}

std::vector<double> rnn_step(const ModelParams& p,
                             const std::vector<double>& h_prev,
                             const std::vector<double>& x_prev) {
  if (h_prev.size() != p.hidden || x_prev.size() != p.dim) {
    throw Error(ErrorCode::InvalidArgument, "rnn_step: shape mismatch");
  }
  std::vector<double> h(p.hidden);
  for (std::size_t i = 0; i < p.hidden; ++i) {
    double acc = p.b(i, 0);
    const double* r = p.U_r.row(i);
    for (std::size_t j = 0; j < p.hidden; ++j) acc += r[j] * h_prev[j];
    const double* u = p.U_i.row(i);
    for (std::size_t j = 0; j < p.dim; ++j) acc += u[j] * x_prev[j];
    h[i] = std::tanh(acc);
  }
  return h;
}

ForwardTrace forward(const ModelParams& p, const ModelOptions& opts,
                     const DenseMatrix& x, const DropoutMask& mask) {
  const std::size_t T = x.rows();
  const std::size_t D = p.dim;
  const std::size_t H = p.hidden;
  if (T == 0 || x.cols() != D) {
    throw Error(ErrorCode::InvalidArgument,
                "forward: sequence must be T x dim with T >= 1");
  }

  ForwardTrace tr;
  try {
    tr.log_abs_det_w = lu_factor(p.W).log_abs_det();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) {
      throw Error(ErrorCode::SingularUnmixing,
                  "unmixing matrix is numerically singular");
    }
    throw;
  }

  tr.s = matmul_nt(x, p.W);
  tr.h = DenseMatrix(T, H);

  std::vector<double> x_row(D), h_row(H);
  for (std::size_t j = 0; j < D; ++j) x_row[j] = x(0, j);
  h_row = init_state(p, opts, x_row, mask);
  for (std::size_t j = 0; j < H; ++j) tr.h(0, j) = h_row[j];
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t j = 0; j < D; ++j) x_row[j] = x(t - 1, j);
    h_row = rnn_step(p, h_row, x_row);
    for (std::size_t j = 0; j < H; ++j) tr.h(t, j) = h_row[j];
  }

  tr.mu = matmul_nt(tr.h, p.W_mu);
  tr.raw_scale = matmul_nt(tr.h, p.W_sigma);
  tr.sigma = DenseMatrix(T, D);
  tr.log_density = DenseMatrix(T, D);

  double dens_sum = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < D; ++i) {
      const double sg = softplus(tr.raw_scale(t, i)) + opts.sigma_floor;
      tr.sigma(t, i) = sg;
      const double ld = logistic_log_density(tr.s(t, i), tr.mu(t, i), sg);
      tr.log_density(t, i) = ld;
      dens_sum += ld;
    }
  }
  tr.nll = -(static_cast<double>(T) * tr.log_abs_det_w + dens_sum);
  return tr;
}

double sequence_nll(const ModelParams& p, const ModelOptions& opts,
                    const DenseMatrix& x) {
  return forward(p, opts, x, DropoutMask::ones(p.mlp_hidden)).nll;
}

}  // namespace rica
