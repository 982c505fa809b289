// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/grad/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "rica/errors.hpp"

namespace rica {

namespace {

struct Slot {
  const char* name;
  DenseMatrix* mutate;
  const DenseMatrix* analytic;
};

}  // namespace

GradCheckReport grad_check_against(const ModelParams& p,
                                   const ModelOptions& opts,
                                   const std::vector<DenseMatrix>& batch,
                                   const std::vector<DropoutMask>& masks,
                                   const ParamBlock& analytic, double step,
                                   double tol, RngStream& rng,
                                   std::size_t max_coords) {
  if (!(step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "grad_check step must be > 0");
  }
  ModelParams work = p;
  std::vector<Slot> slots;
  for_each_array(work, [&slots](const char* name, DenseMatrix& m) {
    slots.push_back({name, &m, nullptr});
  });
  {
    std::size_t k = 0;
    for_each_array(analytic, [&slots, &k](const char*, const DenseMatrix& m) {
      slots[k++].analytic = &m;
    });
  }

  std::size_t total = 0;
  for (const Slot& s : slots) total += s.mutate->size();

  std::vector<std::size_t> coords(total);
  for (std::size_t i = 0; i < total; ++i) coords[i] = i;
  if (total > max_coords) {
    // partial Fisher-Yates: the first max_coords entries become the sample
    for (std::size_t i = 0; i < max_coords; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
      std::swap(coords[i], coords[j]);
    }
    coords.resize(max_coords);
    std::sort(coords.begin(), coords.end());
  }

  GradCheckReport rep;
  rep.checked = coords.size();
  for (std::size_t flat : coords) {
    std::size_t k = 0;
    std::size_t off = flat;
    while (off >= slots[k].mutate->size()) {
      off -= slots[k].mutate->size();
      ++k;
    }
    double& theta = slots[k].mutate->data()[off];
    const double saved = theta;
    const double h = step * std::max(1.0, std::fabs(saved));

    theta = saved + h;
    const double up = batch_mean_nll(work, opts, batch, masks);
    theta = saved - h;
    const double dn = batch_mean_nll(work, opts, batch, masks);
    theta = saved;

    const double fd = (up - dn) / (2.0 * h);
    const double an = slots[k].analytic->data()[off];
    const double rel =
        std::fabs(an - fd) / std::max({std::fabs(an), std::fabs(fd), 1e-8});
    if (rel > rep.max_rel_err) {
      rep.max_rel_err = rel;
      rep.worst_param = slots[k].name;
      rep.worst_index = off;
    }
  }
  rep.pass = rep.max_rel_err <= tol;
  return rep;
}

GradCheckReport grad_check(const ModelParams& p, const ModelOptions& opts,
                           const std::vector<DenseMatrix>& batch,
                           const std::vector<DropoutMask>& masks, double step,
                           double tol, RngStream& rng,
                           std::size_t max_coords) {
  const BatchResult res = batch_backward(p, opts, batch, masks);
  return grad_check_against(p, opts, batch, masks, res.grad, step, tol, rng,
                            max_coords);
}

}  // namespace rica
