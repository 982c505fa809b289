// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"

namespace rica {

struct StatResult {
  double statistic = 0.0;
  double df1 = 0.0;  // the only df for t statistics
  double df2 = 0.0;  // second F df, 0 for t statistics
  double p_value = 1.0;
  int sign = 0;  // sign of the effect; 0 for F tests
};

struct RegressResult {
  std::vector<double> betas;
  double residual_variance = 0.0;  // SSR / (L - p), 0 for saturated fits
};

// Ordinary least squares through the normal equations. X must include its
// own intercept column if one is wanted.
RegressResult regress(const std::vector<double>& y, const DenseMatrix& x);

// Two-sided p for Student's t with df degrees of freedom, and the upper
// tail for F. Both go through the regularized incomplete beta function.
double student_t_pvalue(double t, double df);
double f_pvalue(double f, double df1, double df2);

StatResult ttest_1samp(const std::vector<double>& values, double popmean = 0.0);
// Welch's unequal-variance form.
StatResult ttest_2samp(const std::vector<double>& a, const std::vector<double>& b);
StatResult anova_1way(const std::vector<std::vector<double>>& groups);

struct FdrResult {
  std::vector<std::uint8_t> reject;  // aligned with the input order
  double threshold = 0.0;            // largest rejected p, 0 if none
  std::size_t n_rejected = 0;
};

// Benjamini-Hochberg step-up at level q; the boundary p(i) == i q / m rejects.
FdrResult fdr_bh(const std::vector<double>& pvals, double q);

}  // namespace rica
