// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/matcore/lu.hpp"

#include <cmath>
#include <utility>

#include "rica/errors.hpp"

namespace rica {

namespace {
constexpr double kPivotFloor = 1e-300;
}

LuFactorization lu_factor(const DenseMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::InvalidArgument, "lu_factor needs a square matrix");
  if (!m.all_finite())
    throw Error(ErrorCode::InvalidArgument, "lu_factor input not finite");

  const std::size_t n = m.rows();
  LuFactorization f;
  f.lu = m;
  f.pivots.resize(n);
  f.sign = 1;
  DenseMatrix& a = f.lu;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::fabs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::fabs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best < kPivotFloor)
      throw Error(ErrorCode::SingularMatrix,
                  "pivot below 1e-300 at column " + std::to_string(k));
    f.pivots[k] = piv;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      f.sign = -f.sign;
    }
    const double d = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = a(i, k) / d;
      a(i, k) = l;
      const double* ak = a.row(k);
      double* ai = a.row(i);
      for (std::size_t j = k + 1; j < n; ++j) ai[j] -= l * ak[j];
    }
  }
  return f;
}

double LuFactorization::log_abs_det() const {
  double s = 0.0;
  for (std::size_t i = 0; i < order(); ++i) s += std::log(std::fabs(lu(i, i)));
  return s;
}

double LuFactorization::det_sign() const {
  double s = sign;
  for (std::size_t i = 0; i < order(); ++i)
    if (lu(i, i) < 0.0) s = -s;
  return s;
}

std::vector<double> LuFactorization::solve(const std::vector<double>& b) const {
  const std::size_t n = order();
  if (b.size() != n)
    throw Error(ErrorCode::InvalidArgument, "solve rhs length mismatch");
  std::vector<double> x = b;
  for (std::size_t k = 0; k < n; ++k)
    if (pivots[k] != k) std::swap(x[k], x[pivots[k]]);
  // forward: L y = P b
  for (std::size_t i = 1; i < n; ++i) {
    double acc = x[i];
    const double* li = lu.row(i);
    for (std::size_t j = 0; j < i; ++j) acc -= li[j] * x[j];
    x[i] = acc;
  }
  // back: U x = y
  for (std::size_t ii = n; ii-- > 0;) {
    double acc = x[ii];
    const double* ui = lu.row(ii);
    for (std::size_t j = ii + 1; j < n; ++j) acc -= ui[j] * x[j];
    x[ii] = acc / ui[ii];
  }
  return x;
}

DenseMatrix LuFactorization::solve_matrix(const DenseMatrix& b) const {
  const std::size_t n = order();
  if (b.rows() != n)
    throw Error(ErrorCode::InvalidArgument, "solve rhs rows mismatch");
  DenseMatrix x(n, b.cols());
  std::vector<double> col(n);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    std::vector<double> sol = solve(col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

DenseMatrix LuFactorization::inverse() const {
  return solve_matrix(DenseMatrix::identity(order()));
}

}  // namespace rica
