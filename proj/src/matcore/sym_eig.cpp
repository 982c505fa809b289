// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/matcore/sym_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rica/errors.hpp"

namespace rica {

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymEig sym_eig(const DenseMatrix& c) {
  if (c.rows() != c.cols())
    throw Error(ErrorCode::InvalidArgument, "sym_eig needs a square matrix");
  const std::size_t n = c.rows();

  const double scale = std::max(1.0, max_abs(c));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(c(i, j) - c(j, i)) > 1e-10 * scale)
        throw Error(ErrorCode::NotSymmetric,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") differs from its transpose");

  DenseMatrix a = c;
  DenseMatrix v = DenseMatrix::identity(n);
  const double tol = 1e-12 * std::max(1.0, frobenius_norm(c));

  bool converged = n < 2;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) == 0.0) continue;
        const double app = a(p, p), aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        // smaller-magnitude root of t^2 + 2 theta t - 1 = 0
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = cs * akp - sn * akq;
          a(k, q) = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = cs * apk - sn * aqk;
          a(q, k) = sn * apk + cs * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = cs * vkp - sn * vkq;
          v(k, q) = sn * vkp + cs * vkq;
        }
      }
    }
    converged = off_diagonal_norm(a) <= tol;
  }
  if (!converged)
    throw Error(ErrorCode::NoConvergence, "Jacobi sweeps exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&a](std::size_t x, std::size_t y) {
    return a(x, x) > a(y, y);
  });

  SymEig out;
  out.eigenvalues.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

}  // namespace rica
