// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/analysis/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rica/errors.hpp"
#include "rica/matcore/lu.hpp"

namespace rica {

namespace {

// Continued fraction for the incomplete beta, modified Lentz.
double beta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 400; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b).
double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(ln_front) * beta_cf(a, b, x) / a;
  }
  return 1.0 - std::exp(ln_front) * beta_cf(b, a, 1.0 - x) / b;
}

double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

double student_t_pvalue(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorCode::InvalidArgument, "df must be positive");
  if (!std::isfinite(t)) return 0.0;
  const double p = inc_beta(0.5 * df, 0.5, df / (df + t * t));
  return std::min(1.0, std::max(0.0, p));
}

double f_pvalue(double f, double df1, double df2) {
  if (!(df1 > 0.0) || !(df2 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "dfs must be positive");
  }
  if (!std::isfinite(f)) return 0.0;
  if (f <= 0.0) return 1.0;
  const double p = inc_beta(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f));
  return std::min(1.0, std::max(0.0, p));
}

RegressResult regress(const std::vector<double>& y, const DenseMatrix& x) {
  if (y.size() != x.rows() || y.empty()) {
    throw Error(ErrorCode::LengthMismatch, "y length must match design rows");
  }
  const std::size_t p = x.cols();
  DenseMatrix xtx(p, p, 0.0);
  gemm_tn_acc(xtx, x, x);
  std::vector<double> xty(p, 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < p; ++j) xty[j] += x(i, j) * y[i];
  }

  RegressResult out;
  try {
    out.betas = lu_factor(xtx).solve(xty);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) {
      throw Error(ErrorCode::RankDeficient, "design is rank-deficient");
    }
    throw;
  }

  double ssr = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < p; ++j) fit += x(i, j) * out.betas[j];
    ssr += (y[i] - fit) * (y[i] - fit);
  }
  out.residual_variance =
      y.size() > p ? ssr / static_cast<double>(y.size() - p) : 0.0;
  return out;
}

StatResult ttest_1samp(const std::vector<double>& values, double popmean) {
  if (values.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "need at least two values");
  }
  const double n = static_cast<double>(values.size());
  const double mean = sample_mean(values);
  const double var = sample_var(values, mean);
  if (var == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "sample variance is zero");
  }
  StatResult r;
  r.statistic = (mean - popmean) / std::sqrt(var / n);
  r.df1 = n - 1.0;
  r.p_value = student_t_pvalue(r.statistic, r.df1);
  r.sign = sign_of(mean - popmean);
  return r;
}

StatResult ttest_2samp(const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "need at least two per group");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = sample_mean(a), mb = sample_mean(b);
  const double va = sample_var(a, ma), vb = sample_var(b, mb);
  if (va == 0.0 && vb == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "both groups have zero variance");
  }
  const double se2 = va / na + vb / nb;
  StatResult r;
  r.statistic = (ma - mb) / std::sqrt(se2);
  r.df1 = se2 * se2 /
          ((va / na) * (va / na) / (na - 1.0) +
           (vb / nb) * (vb / nb) / (nb - 1.0));
  r.p_value = student_t_pvalue(r.statistic, r.df1);
  r.sign = sign_of(ma - mb);
  return r;
}

StatResult anova_1way(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "need at least two groups");
  }
  double n_total = 0.0, grand = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) {
      throw Error(ErrorCode::TooFewSamples, "need at least two per group");
    }
    for (double v : g) grand += v;
    n_total += static_cast<double>(g.size());
  }
  grand /= n_total;

  double ssb = 0.0, ssw = 0.0;
  for (const auto& g : groups) {
    const double m = sample_mean(g);
    ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double v : g) ssw += (v - m) * (v - m);
  }
  const double df1 = static_cast<double>(groups.size()) - 1.0;
  const double df2 = n_total - static_cast<double>(groups.size());
  if (ssw == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "within-group variance is zero");
  }

  StatResult r;
  r.statistic = (ssb / df1) / (ssw / df2);
  r.df1 = df1;
  r.df2 = df2;
  r.p_value = f_pvalue(r.statistic, df1, df2);
  r.sign = 0;
  return r;
}

FdrResult fdr_bh(const std::vector<double>& pvals, double q) {
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "q must be positive");
  for (double p : pvals) {
    if (!(p >= 0.0) || !(p <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "p-values must lie in [0, 1]");
    }
  }

  FdrResult out;
  out.reject.assign(pvals.size(), 0);
  if (pvals.empty()) return out;

  std::vector<std::size_t> order(pvals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pvals[a] < pvals[b];
  });

  const double m = static_cast<double>(pvals.size());
  std::size_t cut = 0;  // count of rejected ranks
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double rank = static_cast<double>(i + 1);
    if (pvals[order[i]] <= rank * q / m) cut = i + 1;
  }
  for (std::size_t i = 0; i < cut; ++i) out.reject[order[i]] = 1;
  out.n_rejected = cut;
  out.threshold = cut > 0 ? pvals[order[cut - 1]] : 0.0;
  return out;
}

}  // namespace rica
