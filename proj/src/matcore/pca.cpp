// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/matcore/pca.hpp"

#include <cmath>

#include "rica/errors.hpp"
#include "rica/matcore/sym_eig.hpp"

namespace rica {

PcaResult pca_fit(const DenseMatrix& data, std::size_t k) {
  const std::size_t n = data.rows(), d = data.cols();
  if (k > d)
    throw Error(ErrorCode::KTooLarge,
                "k=" + std::to_string(k) + " exceeds dims=" + std::to_string(d));
  if (n < 2)
    throw Error(ErrorCode::InvalidArgument, "pca_fit needs at least 2 samples");
  if (!data.all_finite())
    throw Error(ErrorCode::InvalidArgument, "pca_fit input not finite");

  DenseMatrix centered = data;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += centered(i, j);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) centered(i, j) -= mean;
  }

  DenseMatrix cov(d, d);
  gemm_tn_acc(cov, centered, centered);
  scale(cov, 1.0 / static_cast<double>(n - 1));
  // symmetrize away accumulation asymmetry before the eigensolver
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const double m = 0.5 * (cov(i, j) + cov(j, i));
      cov(i, j) = m;
      cov(j, i) = m;
    }

  const SymEig eig = sym_eig(cov);

  PcaResult out;
  out.eigenvalues = eig.eigenvalues;
  out.components = DenseMatrix(k, d);
  for (std::size_t c = 0; c < k; ++c) {
    // deterministic sign: largest-magnitude entry positive
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double v = std::fabs(eig.vectors(i, c));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    const double flip = eig.vectors(arg, c) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < d; ++i)
      out.components(c, i) = flip * eig.vectors(i, c);
  }

  out.loadings = matmul_nt(centered, out.components);
  for (std::size_t j = 0; j < k; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += out.loadings(i, j);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out.loadings(i, j) -= mean;
  }
  return out;
}

}  // namespace rica
