// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/synth/simulate.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "rica/errors.hpp"
#include "rica/matcore/parallel.hpp"
#include "rica/matcore/sym_eig.hpp"

namespace rica {

namespace {

void require_stochastic(const DenseMatrix& p) {
  if (p.rows() == 0 || p.rows() != p.cols()) {
    throw Error(ErrorCode::InvalidStochasticMatrix,
                "transition matrix must be square and nonempty");
  }
  for (std::size_t i = 0; i < p.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (!(p(i, j) >= 0.0)) {
        throw Error(ErrorCode::InvalidStochasticMatrix,
                    "negative transition probability");
      }
      sum += p(i, j);
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvalidStochasticMatrix,
                  "transition row " + std::to_string(i) + " sums to " +
                      std::to_string(sum));
    }
  }
}

std::size_t draw_categorical(const double* weights, std::size_t k,
                             RngStream& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    cum += weights[j];
    if (u < cum) return j;
  }
  return k - 1;  // guard against rounding in the row sum
}

// V sqrt(diag(lambda)) V^T from the eigendecomposition.
DenseMatrix spd_sqrt(const DenseMatrix& c) {
  const SymEig eig = sym_eig(c);
  if (!(eig.eigenvalues.back() > 1e-8)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "covariance is not positive-definite");
  }
  const std::size_t m = c.rows();
  DenseMatrix s(m, m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double r = std::sqrt(eig.eigenvalues[k]);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        s(i, j) += r * eig.vectors(i, k) * eig.vectors(j, k);
      }
    }
  }
  return s;
}

double gamma_density(double t, double shape, double disp) {
  if (t <= 0.0) return 0.0;
  return std::exp((shape - 1.0) * std::log(t) - t / disp -
                  std::lgamma(shape) - shape * std::log(disp));
}

double condition_2norm(const DenseMatrix& a) {
  DenseMatrix ata(a.cols(), a.cols(), 0.0);
  gemm_tn_acc(ata, a, a);
  const SymEig eig = sym_eig(ata);
  const double lo = eig.eigenvalues.back();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(eig.eigenvalues.front() / lo);
}

DenseMatrix draw_mixing(std::size_t m, double bound, std::uint64_t seed) {
  RngStream rng(seed, stream_id::kMixing);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    DenseMatrix g(m, m);
    for (double& v : g.data()) v = rng.normal();
    if (condition_2norm(g) <= bound) return g;
  }
  throw Error(ErrorCode::InvalidArgument,
              "no mixing matrix within the condition bound after 10000 draws");
}

}  // namespace

std::vector<std::uint32_t> sample_state_sequence(const DenseMatrix& p,
                                                 const std::vector<double>& pi0,
                                                 std::size_t t,
                                                 RngStream& rng) {
  require_stochastic(p);
  const std::size_t k = p.rows();
  if (pi0.size() != k) {
    throw Error(ErrorCode::InvalidStochasticMatrix, "pi0 length mismatch");
  }
  double sum = 0.0;
  for (double v : pi0) {
    if (!(v >= 0.0)) {
      throw Error(ErrorCode::InvalidStochasticMatrix,
                  "pi0 has a negative entry");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidStochasticMatrix, "pi0 does not sum to 1");
  }

  std::vector<std::uint32_t> states(t);
  if (t == 0) return states;
  std::size_t cur = draw_categorical(pi0.data(), k, rng);
  states[0] = static_cast<std::uint32_t>(cur + 1);
  for (std::size_t i = 1; i < t; ++i) {
    cur = draw_categorical(p.row(cur), k, rng);
    states[i] = static_cast<std::uint32_t>(cur + 1);
  }
  return states;
}

DenseMatrix generate_sources(const std::vector<std::uint32_t>& states,
                             const std::vector<DenseMatrix>& covariances,
                             RngStream& rng) {
  if (covariances.empty()) {
    throw Error(ErrorCode::InvalidArgument, "need at least one covariance");
  }
  const std::size_t k = covariances.size();
  const std::size_t m = covariances.front().rows();
  std::vector<DenseMatrix> roots;
  roots.reserve(k);
  for (const DenseMatrix& c : covariances) {
    if (c.rows() != m || c.cols() != m) {
      throw Error(ErrorCode::InvalidArgument, "covariance shapes disagree");
    }
    roots.push_back(spd_sqrt(c));
  }

  DenseMatrix e(states.size(), m);
  std::vector<double> z(m);
  for (std::size_t t = 0; t < states.size(); ++t) {
    const std::uint32_t s = states[t];
    if (s < 1 || s > k) {
      throw Error(ErrorCode::InvalidArgument,
                  "state " + std::to_string(s) + " outside 1.." +
                      std::to_string(k));
    }
    for (std::size_t i = 0; i < m; ++i) z[i] = rng.laplace_unit();
    const std::vector<double> row = matvec(roots[s - 1], z);
    for (std::size_t i = 0; i < m; ++i) e(t, i) = row[i];
  }
  return e;
}

std::vector<double> hrf_kernel(double peak_delay, double undershoot_delay,
                               double peak_disp, double undershoot_disp,
                               double ratio, double tr, std::size_t length) {
  if (!(peak_delay > 0.0) || !(undershoot_delay > 0.0) ||
      !(peak_disp > 0.0) || !(undershoot_disp > 0.0) || !(ratio >= 0.0)) {
    throw Error(ErrorCode::InvalidHrfParams,
                "hrf parameters must be positive");
  }
  if (!(tr > 0.0)) throw Error(ErrorCode::InvalidHrfParams, "tr must be positive");
  if (length == 0) {
    throw Error(ErrorCode::InvalidArgument, "kernel length must be positive");
  }

  std::vector<double> h(length);
  double peak = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    const double t = static_cast<double>(i) * tr;
    h[i] = gamma_density(t, peak_delay / peak_disp, peak_disp) -
           ratio * gamma_density(t, undershoot_delay / undershoot_disp,
                                 undershoot_disp);
    if (h[i] > peak) peak = h[i];
  }
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw Error(ErrorCode::InvalidHrfParams,
                "kernel has no positive finite peak on this grid");
  }
  for (double& v : h) v /= peak;
  return h;
}

std::vector<double> convolve(const std::vector<double>& x,
                             const std::vector<double>& kernel) {
  if (kernel.empty()) {
    throw Error(ErrorCode::InvalidArgument, "empty convolution kernel");
  }
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t t = 0; t < x.size(); ++t) {
    const std::size_t kmax = t < kernel.size() - 1 ? t : kernel.size() - 1;
    double acc = 0.0;
    for (std::size_t j = 0; j <= kmax; ++j) acc += kernel[j] * x[t - j];
    y[t] = acc;
  }
  return y;
}

Cohort simulate_cohort(const SimConfig& cfg) {
  SimConfig c = cfg;
  c.fill_defaults();
  c.validate();

  const std::size_t m = c.n_sources;
  const std::size_t t = c.timepoints;
  const std::size_t n = 2 * c.subjects_per_group;

  DenseMatrix mixing = c.mixing.rows() != 0
                           ? c.mixing
                           : draw_mixing(m, c.condition_bound, c.seed);

  Cohort out;
  out.observations.resize(n);
  out.truth.states.resize(n);
  out.truth.sources.resize(n);
  out.truth.group_labels.resize(n);
  out.truth.mixing = mixing;
  out.truth.config = c;

  parallel_for(n, [&](std::size_t i) {
    const bool group_b = i >= c.subjects_per_group;
    RngStream rng(c.seed, stream_id::subject(i));

    // subject-level hemodynamic jitter (drawn even when convolution is off,
    // so the stream layout does not depend on hrf_length)
    const double pd = rng.uniform(c.peak_delay_lo, c.peak_delay_hi);
    const double ud = rng.uniform(c.undershoot_delay_lo, c.undershoot_delay_hi);

    std::vector<std::uint32_t> states = sample_state_sequence(
        group_b ? c.p_b : c.p_a, c.pi0, t, rng);
    DenseMatrix sources = generate_sources(states, c.covariances, rng);

    DenseMatrix bold = sources;
    if (c.hrf_length > 0) {
      const std::vector<double> kernel =
          hrf_kernel(pd, ud, c.hrf_peak_disp, c.hrf_undershoot_disp,
                     c.hrf_ratio, c.tr, c.hrf_length);
      std::vector<double> col(t);
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t row = 0; row < t; ++row) col[row] = sources(row, j);
        const std::vector<double> conv = convolve(col, kernel);
        for (std::size_t row = 0; row < t; ++row) bold(row, j) = conv[row];
      }
    }

    DenseMatrix obs = matmul_nt(bold, mixing);
    if (c.noise_std > 0.0) {
      for (double& v : obs.data()) v += c.noise_std * rng.normal();
    }

    out.observations[i] = std::move(obs);
    out.truth.states[i] = std::move(states);
    out.truth.sources[i] = std::move(sources);
    out.truth.group_labels[i] = group_b ? 1 : 0;
  });
  return out;
}

}  // namespace rica
