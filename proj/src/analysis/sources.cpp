// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/analysis/sources.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rica/errors.hpp"
#include "rica/matcore/lu.hpp"

namespace rica {

namespace {

struct ColumnStats {
  std::vector<double> mean;
  std::vector<double> sd;  // population scaling, only compared against 0
};

ColumnStats column_stats(const DenseMatrix& x) {
  ColumnStats st;
  st.mean.assign(x.cols(), 0.0);
  st.sd.assign(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) st.mean[j] += x(i, j);
  }
  for (double& m : st.mean) m /= static_cast<double>(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const double d = x(i, j) - st.mean[j];
      st.sd[j] += d * d;
    }
  }
  for (double& s : st.sd) s = std::sqrt(s);
  return st;
}

}  // namespace

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::LengthMismatch,
                "pearson needs two equal series of length >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return sxy / std::sqrt(sxx * syy);
}

DenseMatrix extract_sources(const ModelParams& params,
                            const DenseMatrix& x_seq) {
  if (x_seq.cols() != params.dim) {
    throw Error(ErrorCode::InvalidArgument, "sequence width must match model");
  }
  try {
    lu_factor(params.W);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) {
      throw Error(ErrorCode::SingularUnmixing, "unmixing matrix is singular");
    }
    throw;
  }
  return matmul_nt(x_seq, params.W);
}

FncResult fnc(const std::vector<DenseMatrix>& sources_per_subject) {
  if (sources_per_subject.empty()) {
    throw Error(ErrorCode::InvalidArgument, "need at least one subject");
  }
  const std::size_t d = sources_per_subject.front().cols();
  for (const DenseMatrix& s : sources_per_subject) {
    if (s.cols() != d || s.rows() < 2) {
      throw Error(ErrorCode::InvalidArgument,
                  "subjects must share width and have >= 2 timepoints");
    }
  }

  DenseMatrix sum(d, d, 0.0);
  DenseMatrix count(d, d, 0.0);
  std::vector<std::uint8_t> flat(d, 0);
  for (const DenseMatrix& s : sources_per_subject) {
    const ColumnStats st = column_stats(s);
    for (std::size_t j = 0; j < d; ++j) {
      if (st.sd[j] == 0.0) flat[j] = 1;
    }
    for (std::size_t a = 0; a < d; ++a) {
      if (st.sd[a] == 0.0) continue;
      for (std::size_t b = a + 1; b < d; ++b) {
        if (st.sd[b] == 0.0) continue;
        double sxy = 0.0;
        for (std::size_t t = 0; t < s.rows(); ++t) {
          sxy += (s(t, a) - st.mean[a]) * (s(t, b) - st.mean[b]);
        }
        const double r = sxy / (st.sd[a] * st.sd[b]);
        sum(a, b) += r;
        count(a, b) += 1.0;
      }
    }
  }

  FncResult out;
  out.values = DenseMatrix(d, d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    out.values(a, a) = 1.0;
    for (std::size_t b = a + 1; b < d; ++b) {
      const double v = count(a, b) > 0.0 ? sum(a, b) / count(a, b) : 0.0;
      out.values(a, b) = v;
      out.values(b, a) = v;
    }
    if (flat[a]) out.flagged.push_back(static_cast<std::uint32_t>(a));
  }
  return out;
}

DenseMatrix state_correlation(
    const std::vector<DenseMatrix>& traces,
    const std::vector<std::vector<std::uint32_t>>& states) {
  if (traces.size() != states.size() || traces.empty()) {
    throw Error(ErrorCode::LengthMismatch,
                "need one state vector per subject trace");
  }
  const std::size_t units = traces.front().cols();
  DenseMatrix r(traces.size(), units,
                std::numeric_limits<double>::quiet_NaN());
  std::vector<double> u, sv;
  for (std::size_t s = 0; s < traces.size(); ++s) {
    const DenseMatrix& tr = traces[s];
    if (tr.cols() != units) {
      throw Error(ErrorCode::LengthMismatch, "trace widths disagree");
    }
    if (tr.rows() != states[s].size() || tr.rows() < 2) {
      throw Error(ErrorCode::LengthMismatch,
                  "trace and state vector lengths disagree");
    }
    sv.resize(tr.rows());
    for (std::size_t t = 0; t < tr.rows(); ++t) {
      sv[t] = static_cast<double>(states[s][t]);
    }
    u.resize(tr.rows());
    for (std::size_t j = 0; j < units; ++j) {
      for (std::size_t t = 0; t < tr.rows(); ++t) u[t] = tr(t, j);
      r(s, j) = pearson(u, sv);  // NaN for flat traces by convention
    }
  }
  return r;
}

}  // namespace rica
