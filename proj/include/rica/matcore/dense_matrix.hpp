// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_MATCORE_DENSE_MATRIX_HPP_
#define RICA_MATCORE_DENSE_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rica {

// Row-major dense matrix of doubles. Vectors are stored as n x 1.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix column(const std::vector<double>& values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

  void fill(double value);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix transpose(const DenseMatrix& a);

// c = a * b, c += a * b
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
void gemm_acc(DenseMatrix& c, const DenseMatrix& a, const DenseMatrix& b);
// c = a * b^T, c += a * b^T
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);
void gemm_nt_acc(DenseMatrix& c, const DenseMatrix& a, const DenseMatrix& b);
// c += a^T * b
void gemm_tn_acc(DenseMatrix& c, const DenseMatrix& a, const DenseMatrix& b);

std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x);

// a += s * b (congruent shapes)
void add_scaled(DenseMatrix& a, const DenseMatrix& b, double s);
void scale(DenseMatrix& a, double s);

double max_abs(const DenseMatrix& a);
double frobenius_norm(const DenseMatrix& a);

// Adds row vector r (length = a.cols()) to every row of a.
void add_row_broadcast(DenseMatrix& a, const DenseMatrix& r);
// Column sums of a as a cols x 1 matrix, accumulated into out.
void col_sum_acc(DenseMatrix& out, const DenseMatrix& a);

}  // namespace rica

#endif  // RICA_MATCORE_DENSE_MATRIX_HPP_
