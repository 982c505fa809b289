// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/grad/backward.hpp"

#include <cmath>
#include <string>

#include "rica/errors.hpp"
#include "rica/matcore/lu.hpp"
#include "rica/model/activations.hpp"

namespace rica {

namespace {

void check_batch(const ModelParams& p, const std::vector<DenseMatrix>& batch,
                 const std::vector<DropoutMask>& masks) {
  if (batch.empty()) {
    throw Error(ErrorCode::InvalidArgument, "batch must not be empty");
  }
  if (masks.size() != batch.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "need one dropout mask per sequence");
  }
  const std::size_t T = batch.front().rows();
  if (T == 0) {
    throw Error(ErrorCode::InvalidArgument, "sequences must have T >= 1");
  }
  for (const DenseMatrix& seq : batch) {
    if (seq.rows() != T || seq.cols() != p.dim) {
      throw Error(ErrorCode::InvalidArgument,
                  "all sequences in a batch must be T x dim");
    }
  }
  for (const DropoutMask& m : masks) {
    if (m.scale.size() != p.mlp_hidden) {
      throw Error(ErrorCode::InvalidArgument, "dropout mask length mismatch");
    }
  }
}

// Timestep t of every sequence, stacked as one N x D matrix.
DenseMatrix stack_step(const std::vector<DenseMatrix>& batch, std::size_t t) {
  const std::size_t n = batch.size();
  const std::size_t d = batch.front().cols();
  DenseMatrix x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* src = batch[i].row(t);
    double* dst = x.row(i);
    for (std::size_t j = 0; j < d; ++j) dst[j] = src[j];
  }
  return x;
}

void tanh_in_place(DenseMatrix& a) {
  for (double& v : a.data()) v = std::tanh(v);
}

}  // namespace

BatchResult batch_backward(const ModelParams& p, const ModelOptions& opts,
                           const std::vector<DenseMatrix>& batch,
                           const std::vector<DropoutMask>& masks) {
  check_batch(p, batch, masks);
  const std::size_t N = batch.size();
  const std::size_t T = batch.front().rows();
  const std::size_t D = p.dim;
  const std::size_t Hm = p.mlp_hidden;

  double log_det = 0.0;
  DenseMatrix w_inv;
  try {
    LuFactorization lu = lu_factor(p.W);
    log_det = lu.log_abs_det();
    w_inv = lu.inverse();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) {
      throw Error(ErrorCode::SingularUnmixing,
                  "unmixing matrix is numerically singular");
    }
    throw;
  }

  std::vector<DenseMatrix> X(T);
  for (std::size_t t = 0; t < T; ++t) X[t] = stack_step(batch, t);

  // init network: v = A1 x_1 + b1, u = mask .* softplus(v), h_1 = tanh(A2 u + b2)
  DenseMatrix V(N, Hm);
  if (opts.leaky_first_step) gemm_nt_acc(V, X[0], p.A1);
  add_row_broadcast(V, p.b1);
  DenseMatrix U_drop(N, Hm);
  for (std::size_t n = 0; n < N; ++n) {
    const double* vn = V.row(n);
    double* un = U_drop.row(n);
    const std::vector<double>& sc = masks[n].scale;
    for (std::size_t i = 0; i < Hm; ++i) un[i] = sc[i] * softplus(vn[i]);
  }

  std::vector<DenseMatrix> Hs(T);
  Hs[0] = matmul_nt(U_drop, p.A2);
  add_row_broadcast(Hs[0], p.b2);
  tanh_in_place(Hs[0]);
  for (std::size_t t = 1; t < T; ++t) {
    Hs[t] = matmul_nt(Hs[t - 1], p.U_r);
    gemm_nt_acc(Hs[t], X[t - 1], p.U_i);
    add_row_broadcast(Hs[t], p.b);
    tanh_in_place(Hs[t]);
  }

  // Per-element density gradients. With z = (s - mu) / sigma and
  // th = tanh(z / 2):
  //   dNLL/ds     =  th / sigma
  //   dNLL/dmu    = -th / sigma
  //   dNLL/dsigma = (1 - z th) / sigma, chained through softplus for the
  //   pre-activation scale.
  std::vector<DenseMatrix> Gs(T), Gmu(T), Gr(T);
  double dens_sum = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    DenseMatrix s = matmul_nt(X[t], p.W);
    DenseMatrix mu = matmul_nt(Hs[t], p.W_mu);
    DenseMatrix raw = matmul_nt(Hs[t], p.W_sigma);
    Gs[t] = DenseMatrix(N, D);
    Gmu[t] = DenseMatrix(N, D);
    Gr[t] = DenseMatrix(N, D);
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t i = 0; i < D; ++i) {
        const double rw = raw(n, i);
        const double sg = softplus(rw) + opts.sigma_floor;
        const double z = (s(n, i) - mu(n, i)) / sg;
        const double th = std::tanh(0.5 * z);
        dens_sum += -z - std::log(sg) - 2.0 * softplus(-z);
        const double gs = th / sg;
        Gs[t](n, i) = gs;
        Gmu[t](n, i) = -gs;
        Gr[t](n, i) = (1.0 - z * th) / sg * sigmoid(rw);
      }
    }
  }

  ParamBlock g = zeros_like(p);
  for (std::size_t t = 0; t < T; ++t) {
    gemm_tn_acc(g.W, Gs[t], X[t]);
    gemm_tn_acc(g.W_mu, Gmu[t], Hs[t]);
    gemm_tn_acc(g.W_sigma, Gr[t], Hs[t]);
  }

  // backward through the recurrence
  DenseMatrix e_next;
  for (std::size_t ti = T; ti-- > 0;) {
    DenseMatrix d = matmul(Gmu[ti], p.W_mu);
    gemm_acc(d, Gr[ti], p.W_sigma);
    if (ti + 1 < T) gemm_acc(d, e_next, p.U_r);
    DenseMatrix& ht = Hs[ti];
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double h = ht.data()[k];
      d.data()[k] *= 1.0 - h * h;
    }
    if (ti > 0) {
      gemm_tn_acc(g.U_r, d, Hs[ti - 1]);
      gemm_tn_acc(g.U_i, d, X[ti - 1]);
      col_sum_acc(g.b, d);
    } else {
      gemm_tn_acc(g.A2, d, U_drop);
      col_sum_acc(g.b2, d);
      DenseMatrix dv = matmul(d, p.A2);  // N x Hm
      for (std::size_t n = 0; n < N; ++n) {
        double* row = dv.row(n);
        const double* vn = V.row(n);
        const std::vector<double>& sc = masks[n].scale;
        for (std::size_t i = 0; i < Hm; ++i) {
          row[i] *= sc[i] * sigmoid(vn[i]);
        }
      }
      if (opts.leaky_first_step) gemm_tn_acc(g.A1, dv, X[0]);
      col_sum_acc(g.b1, dv);
    }
    e_next = std::move(d);
  }

  const double inv_n = 1.0 / static_cast<double>(N);
  for_each_array(g, [inv_n](const char*, DenseMatrix& m) { scale(m, inv_n); });
  DenseMatrix w_inv_t = transpose(w_inv);
  add_scaled(g.W, w_inv_t, -static_cast<double>(T));

  BatchResult out;
  out.mean_nll = -static_cast<double>(T) * log_det - dens_sum * inv_n;
  out.grad = std::move(g);

  if (!std::isfinite(out.mean_nll)) {
    throw Error(ErrorCode::NonFiniteGradient, "batch NLL is not finite");
  }
  const char* bad = nullptr;
  for_each_array(out.grad, [&bad](const char* name, const DenseMatrix& m) {
    if (bad == nullptr && !m.all_finite()) bad = name;
  });
  if (bad != nullptr) {
    throw Error(ErrorCode::NonFiniteGradient,
                std::string("gradient for ") + bad + " is not finite");
  }
  return out;
}

double batch_mean_nll(const ModelParams& p, const ModelOptions& opts,
                      const std::vector<DenseMatrix>& batch,
                      const std::vector<DropoutMask>& masks) {
  check_batch(p, batch, masks);
  double total = 0.0;
  for (std::size_t n = 0; n < batch.size(); ++n) {
    total += forward(p, opts, batch[n], masks[n]).nll;
  }
  return total / static_cast<double>(batch.size());
}

DenseMatrix log_abs_det_grad(const DenseMatrix& w) {
  return transpose(lu_factor(w).inverse());
}

double clip_global_norm(ParamBlock& g, double max_norm) {
  double sq = 0.0;
  for_each_array(g, [&sq](const char*, const DenseMatrix& m) {
    for (double v : m.data()) sq += v * v;
  });
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double f = max_norm / norm;
    for_each_array(g, [f](const char*, DenseMatrix& m) { scale(m, f); });
  }
  return norm;
}

}  // namespace rica
