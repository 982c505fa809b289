// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/matcore/dense_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "rica/errors.hpp"

namespace rica {

namespace {
void require_shape(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}
}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  DenseMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    require_shape(row.size() == c, "ragged initializer rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

DenseMatrix DenseMatrix::column(const std::vector<double>& values) {
  DenseMatrix m(values.size(), 1);
  std::copy(values.begin(), values.end(), m.data().begin());
  return m;
}

bool DenseMatrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void DenseMatrix::fill(double value) {
  std::fill(data_.begin(), data_.end(), value);
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols(), 0.0);
  gemm_acc(c, a, b);
  return c;
}

void gemm_acc(DenseMatrix& c, const DenseMatrix& a, const DenseMatrix& b) {
  require_shape(a.cols() == b.rows() && c.rows() == a.rows() &&
                    c.cols() == b.cols(),
                "gemm shape mismatch");
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t p = 0; p < k; ++p) {
      const double av = ai[p];
      const double* bp = b.row(p);
      for (std::size_t j = 0; j < m; ++j) ci[j] += av * bp[j];
    }
  }
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.rows(), 0.0);
  gemm_nt_acc(c, a, b);
  return c;
}

void gemm_nt_acc(DenseMatrix& c, const DenseMatrix& a, const DenseMatrix& b) {
  require_shape(a.cols() == b.cols() && c.rows() == a.rows() &&
                    c.cols() == b.rows(),
                "gemm_nt shape mismatch");
  const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      const double* bj = b.row(j);
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += ai[p] * bj[p];
      ci[j] += acc;
    }
  }
}

void gemm_tn_acc(DenseMatrix& c, const DenseMatrix& a, const DenseMatrix& b) {
  require_shape(a.rows() == b.rows() && c.rows() == a.cols() &&
                    c.cols() == b.cols(),
                "gemm_tn shape mismatch");
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t p = 0; p < n; ++p) {
    const double* ap = a.row(p);
    const double* bp = b.row(p);
    for (std::size_t i = 0; i < k; ++i) {
      const double av = ap[i];
      double* ci = c.row(i);
      for (std::size_t j = 0; j < m; ++j) ci[j] += av * bp[j];
    }
  }
}

std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x) {
  require_shape(a.cols() == x.size(), "matvec shape mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += ai[j] * x[j];
    y[i] = acc;
  }
  return y;
}

void add_scaled(DenseMatrix& a, const DenseMatrix& b, double s) {
  require_shape(a.same_shape(b), "add_scaled shape mismatch");
  double* pa = a.data().data();
  const double* pb = b.data().data();
  for (std::size_t i = 0; i < a.size(); ++i) pa[i] += s * pb[i];
}

void scale(DenseMatrix& a, double s) {
  for (double& v : a.data()) v *= s;
}

double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::fabs(v));
  return m;
}

double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

void add_row_broadcast(DenseMatrix& a, const DenseMatrix& r) {
  require_shape(r.size() == a.cols(), "broadcast length mismatch");
  const double* rv = r.data().data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ai = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) ai[j] += rv[j];
  }
}

void col_sum_acc(DenseMatrix& out, const DenseMatrix& a) {
  require_shape(out.size() == a.cols(), "col_sum length mismatch");
  double* ov = out.data().data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) ov[j] += ai[j];
  }
}

}  // namespace rica
