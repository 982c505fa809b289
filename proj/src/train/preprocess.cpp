// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/train/preprocess.hpp"

#include <cmath>

#include "rica/errors.hpp"
#include "rica/matcore/lu.hpp"

namespace rica {

std::vector<double> detrend(const std::vector<double>& series,
                            std::size_t degree) {
  const std::size_t n = series.size();
  if (n <= degree) {
    throw Error(ErrorCode::DegreeTooHigh,
                "need more samples than the polynomial degree");
  }
  const std::size_t k = degree + 1;

  // Vandermonde normal equations on t scaled to [-1, 1].
  std::vector<std::vector<double>> powers(n, std::vector<double>(k));
  for (std::size_t i = 0; i < n; ++i) {
    const double t =
        n == 1 ? 0.0 : 2.0 * static_cast<double>(i) / (n - 1.0) - 1.0;
    double p = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      powers[i][j] = p;
      p *= t;
    }
  }
  DenseMatrix gram(k, k);
  std::vector<double> rhs(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      rhs[a] += powers[i][a] * series[i];
      for (std::size_t b = 0; b < k; ++b) {
        gram(a, b) += powers[i][a] * powers[i][b];
      }
    }
  }
  const std::vector<double> coef = lu_factor(gram).solve(rhs);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < k; ++j) fit += coef[j] * powers[i][j];
    out[i] = series[i] - fit;
  }
  return out;
}

std::vector<double> variance_normalize(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 2) {
    throw Error(ErrorCode::ZeroVariance,
                "variance undefined for fewer than two samples");
  }
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : series) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "series is constant");
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = mean + (series[i] - mean) / sd;
  return out;
}

namespace {

template <typename Fn>
void per_column(DenseMatrix& x, Fn&& fn) {
  std::vector<double> col(x.rows());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 0; i < x.rows(); ++i) col[i] = x(i, j);
    const std::vector<double> out = fn(col);
    for (std::size_t i = 0; i < x.rows(); ++i) x(i, j) = out[i];
  }
}

}  // namespace

void detrend_columns(DenseMatrix& x, std::size_t degree) {
  per_column(x, [degree](const std::vector<double>& c) {
    return detrend(c, degree);
  });
}

void variance_normalize_columns(DenseMatrix& x) {
  per_column(x,
             [](const std::vector<double>& c) { return variance_normalize(c); });
}

std::size_t window_count(std::size_t length, std::size_t w,
                         std::size_t stride) {
  if (w == 0 || stride == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "window width and stride must be >= 1");
  }
  if (w > length) {
    throw Error(ErrorCode::WindowTooLong,
                "window is longer than the series");
  }
  return (length - w) / stride + 1;
}

std::vector<DenseMatrix> window(const DenseMatrix& seq, std::size_t w,
                                std::size_t stride) {
  const std::size_t count = window_count(seq.rows(), w, stride);
  std::vector<DenseMatrix> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t start = k * stride;
    DenseMatrix slice(w, seq.cols());
    for (std::size_t i = 0; i < w; ++i) {
      const double* src = seq.row(start + i);
      double* dst = slice.row(i);
      for (std::size_t j = 0; j < seq.cols(); ++j) dst[j] = src[j];
    }
    out.push_back(std::move(slice));
  }
  return out;
}

}  // namespace rica
