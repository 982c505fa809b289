// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/model/params.hpp"

#include <cmath>

namespace rica {

namespace {

void glorot_fill(DenseMatrix& m, std::size_t fan_in, std::size_t fan_out,
                 RngStream& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (double& v : m.data()) v = rng.uniform(-a, a);
}

}  // namespace

bool ParamBlock::all_finite() const {
  bool ok = true;
  for_each_array(*this, [&ok](const char*, const DenseMatrix& m) {
    ok = ok && m.all_finite();
  });
  return ok;
}

ModelParams init_params(std::size_t dim, std::size_t hidden,
                        std::size_t mlp_hidden, RngStream& rng) {
  ModelParams p;
  p.dim = dim;
  p.hidden = hidden;
  p.mlp_hidden = mlp_hidden;

  p.W = DenseMatrix::identity(dim);
  for (double& v : p.W.data()) v += rng.uniform(-0.01, 0.01);

  p.U_r = DenseMatrix(hidden, hidden);
  glorot_fill(p.U_r, hidden, hidden, rng);
  p.U_i = DenseMatrix(hidden, dim);
  glorot_fill(p.U_i, dim, hidden, rng);
  p.b = DenseMatrix(hidden, 1, 0.0);

  p.W_mu = DenseMatrix(dim, hidden);
  glorot_fill(p.W_mu, hidden, dim, rng);
  p.W_sigma = DenseMatrix(dim, hidden);
  glorot_fill(p.W_sigma, hidden, dim, rng);

  p.A1 = DenseMatrix(mlp_hidden, dim);
  glorot_fill(p.A1, dim, mlp_hidden, rng);
  p.b1 = DenseMatrix(mlp_hidden, 1, 0.0);
  p.A2 = DenseMatrix(hidden, mlp_hidden);
  glorot_fill(p.A2, mlp_hidden, hidden, rng);
  p.b2 = DenseMatrix(hidden, 1, 0.0);
  return p;
}

ParamBlock zeros_like(const ModelParams& p) {
  ParamBlock z;
  z.W = DenseMatrix(p.W.rows(), p.W.cols());
  z.U_r = DenseMatrix(p.U_r.rows(), p.U_r.cols());
  z.U_i = DenseMatrix(p.U_i.rows(), p.U_i.cols());
  z.b = DenseMatrix(p.b.rows(), 1);
  z.W_mu = DenseMatrix(p.W_mu.rows(), p.W_mu.cols());
  z.W_sigma = DenseMatrix(p.W_sigma.rows(), p.W_sigma.cols());
  z.A1 = DenseMatrix(p.A1.rows(), p.A1.cols());
  z.b1 = DenseMatrix(p.b1.rows(), 1);
  z.A2 = DenseMatrix(p.A2.rows(), p.A2.cols());
  z.b2 = DenseMatrix(p.b2.rows(), 1);
  return z;
}

}  // namespace rica
