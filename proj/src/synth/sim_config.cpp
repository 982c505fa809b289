// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/synth/sim_config.hpp"

#include <cmath>
#include <string>

#include "rica/errors.hpp"
#include "rica/matcore/rng.hpp"
#include "rica/matcore/sym_eig.hpp"

namespace rica {

namespace {

DenseMatrix stochastic_with_diag(std::size_t k, double diag) {
  DenseMatrix p(k, k, 0.0);
  const double off = k > 1 ? (1.0 - diag) / static_cast<double>(k - 1) : 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) p(i, j) = i == j ? diag : off;
    if (k == 1) p(i, i) = 1.0;
  }
  return p;
}

// Random correlation-like SPD pattern, scaled so state variances sweep a
// geometric range. Gives each state a distinct, well conditioned covariance.
std::vector<DenseMatrix> default_covariances(std::size_t m, std::size_t k,
                                             std::uint64_t seed) {
  RngStream rng(seed, stream_id::kCovariance);
  std::vector<DenseMatrix> out;
  for (std::size_t s = 0; s < k; ++s) {
    DenseMatrix g(m, m);
    for (double& v : g.data()) v = rng.normal();
    DenseMatrix c = matmul_nt(g, g);
    scale(c, 1.0 / static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) c(i, i) += 0.5;
    // normalize to unit diagonal, then rescale the whole state
    std::vector<double> d(m);
    for (std::size_t i = 0; i < m; ++i) d[i] = std::sqrt(c(i, i));
    const double var =
        k > 1 ? 0.5 * std::pow(4.0, static_cast<double>(s) /
                                        static_cast<double>(k - 1))
              : 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) c(i, j) *= var / (d[i] * d[j]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

void check_stochastic(const DenseMatrix& p, std::size_t k, const char* which) {
  if (p.rows() != k || p.cols() != k) {
    throw Error(ErrorCode::InvalidStochasticMatrix,
                std::string(which) + " must be " + std::to_string(k) + "x" +
                    std::to_string(k));
  }
  for (std::size_t i = 0; i < k; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(p(i, j) >= 0.0)) {
        throw Error(ErrorCode::InvalidStochasticMatrix,
                    std::string(which) + " has a negative entry in row " +
                        std::to_string(i));
      }
      sum += p(i, j);
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvalidStochasticMatrix,
                  std::string(which) + " row " + std::to_string(i) +
                      " sums to " + std::to_string(sum));
    }
  }
}

}  // namespace

void SimConfig::fill_defaults() {
  const std::size_t k = n_states;
  if (p_a.rows() == 0) p_a = stochastic_with_diag(k, 1.0 - 0.1 * (k > 1 ? k - 1 : 0));
  if (p_b.rows() == 0) p_b = stochastic_with_diag(k, k > 1 ? 0.9 : 1.0);
  if (pi0.empty()) pi0.assign(k, 1.0 / static_cast<double>(k));
  if (covariances.empty()) covariances = default_covariances(n_sources, k, seed);
}

void SimConfig::validate() const {
  if (n_sources == 0) throw Error(ErrorCode::InvalidArgument, "n_sources must be positive");
  if (n_states == 0) throw Error(ErrorCode::InvalidArgument, "n_states must be positive");
  if (timepoints == 0) throw Error(ErrorCode::InvalidArgument, "timepoints must be positive");
  if (!(tr > 0.0)) throw Error(ErrorCode::InvalidArgument, "tr must be positive");
  if (subjects_per_group == 0) {
    throw Error(ErrorCode::InvalidArgument, "subjects_per_group must be positive");
  }
  check_stochastic(p_a, n_states, "p_a");
  check_stochastic(p_b, n_states, "p_b");
  if (pi0.size() != n_states) {
    throw Error(ErrorCode::InvalidStochasticMatrix, "pi0 length mismatch");
  }
  double sum = 0.0;
  for (double v : pi0) {
    if (!(v >= 0.0)) {
      throw Error(ErrorCode::InvalidStochasticMatrix, "pi0 has a negative entry");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidStochasticMatrix, "pi0 does not sum to 1");
  }
  if (covariances.size() != n_states) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "expected one covariance per state");
  }
  for (std::size_t s = 0; s < covariances.size(); ++s) {
    const DenseMatrix& c = covariances[s];
    if (c.rows() != n_sources || c.cols() != n_sources) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "covariance " + std::to_string(s) + " has wrong shape");
    }
    const SymEig eig = sym_eig(c);
    if (!(eig.eigenvalues.back() > 1e-8)) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "covariance " + std::to_string(s) +
                      " is not positive-definite");
    }
  }
  if (mixing.rows() != 0 &&
      (mixing.rows() != n_sources || mixing.cols() != n_sources)) {
    throw Error(ErrorCode::InvalidArgument, "mixing must be n_sources square");
  }
  if (!(hrf_peak_delay > 0.0) || !(hrf_undershoot_delay > 0.0) ||
      !(hrf_peak_disp > 0.0) || !(hrf_undershoot_disp > 0.0) ||
      !(hrf_ratio >= 0.0)) {
    throw Error(ErrorCode::InvalidHrfParams, "hrf parameters must be positive");
  }
  if (!(peak_delay_lo > 0.0) || !(peak_delay_hi >= peak_delay_lo) ||
      !(undershoot_delay_lo > 0.0) ||
      !(undershoot_delay_hi >= undershoot_delay_lo)) {
    throw Error(ErrorCode::InvalidHrfParams, "hrf jitter range is invalid");
  }
  if (!(noise_std >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise_std must be nonnegative");
  }
  if (!(condition_bound >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "condition_bound must be >= 1");
  }
}

}  // namespace rica
