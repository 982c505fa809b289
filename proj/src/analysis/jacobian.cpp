// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/analysis/jacobian.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "rica/errors.hpp"
#include "rica/matcore/lu.hpp"
#include "rica/matcore/parallel.hpp"

namespace rica {

JacobianResult next_step_jacobian(const ModelParams& params,
                                  const ModelOptions& opts,
                                  const DenseMatrix& x_seq) {
  if (x_seq.rows() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "need at least two timepoints for next-step couplings");
  }
  DenseMatrix w_inv;
  try {
    w_inv = lu_factor(params.W).inverse();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) {
      throw Error(ErrorCode::SingularUnmixing, "unmixing matrix is singular");
    }
    throw;
  }

  const ForwardTrace trace = forward(params, opts, x_seq,
                                     DropoutMask::ones(params.mlp_hidden));
  const std::size_t d = params.dim;
  const std::size_t hdim = params.hidden;
  const DenseMatrix ui_winv = matmul(params.U_i, w_inv);

  JacobianResult out;
  out.mean_abs = DenseMatrix(d, d, 0.0);
  DenseMatrix left(d, hdim);
  for (std::size_t t = 1; t < x_seq.rows(); ++t) {
    // left = W_mu * diag(1 - h_t^2), with h_t the state used for step t
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < hdim; ++k) {
        const double h = trace.h(t, k);
        left(i, k) = params.W_mu(i, k) * (1.0 - h * h);
      }
    }
    DenseMatrix j = matmul(left, ui_winv);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        out.mean_abs(i, k) += std::fabs(j(i, k));
      }
    }
    out.per_step.push_back(std::move(j));
  }
  scale(out.mean_abs, 1.0 / static_cast<double>(out.per_step.size()));
  return out;
}

DenseMatrix mean_abs_jacobian(const ModelParams& params,
                              const ModelOptions& opts,
                              const std::vector<DenseMatrix>& subjects) {
  if (subjects.empty()) {
    throw Error(ErrorCode::InvalidArgument, "need at least one subject");
  }
  std::vector<DenseMatrix> per_subject(subjects.size());
  parallel_for(subjects.size(), [&](std::size_t i) {
    per_subject[i] = next_step_jacobian(params, opts, subjects[i]).mean_abs;
  });
  DenseMatrix mean(params.dim, params.dim, 0.0);
  for (const DenseMatrix& m : per_subject) add_scaled(mean, m, 1.0);
  scale(mean, 1.0 / static_cast<double>(subjects.size()));
  return mean;
}

DenseMatrix connectivity_similarity(const DenseMatrix& jbar) {
  if (jbar.rows() != jbar.cols() || jbar.rows() < 2) {
    throw Error(ErrorCode::InvalidArgument, "expected a square matrix, n >= 2");
  }
  if (!jbar.all_finite()) {
    throw Error(ErrorCode::InvalidArgument, "couplings must be finite");
  }
  const std::size_t n = jbar.rows();
  std::vector<double> mean(n, 0.0), sd(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) mean[j] += jbar(i, j);
    mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = jbar(i, j) - mean[j];
      sd[j] += d * d;
    }
    if (sd[j] == 0.0) {
      throw Error(ErrorCode::ZeroVariance,
                  "column " + std::to_string(j) + " is constant");
    }
    sd[j] = std::sqrt(sd[j]);
  }
  DenseMatrix rho(n, n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    rho(a, a) = 1.0;
    for (std::size_t b = a + 1; b < n; ++b) {
      double sxy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sxy += (jbar(i, a) - mean[a]) * (jbar(i, b) - mean[b]);
      }
      const double r = sxy / (sd[a] * sd[b]);
      rho(a, b) = r;
      rho(b, a) = r;
    }
  }
  return rho;
}

DenseMatrix similarity_graph(const DenseMatrix& rho) {
  DenseMatrix w = rho;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (i == j || w(i, j) < 0.0) w(i, j) = 0.0;
    }
  }
  return w;
}

}  // namespace rica
