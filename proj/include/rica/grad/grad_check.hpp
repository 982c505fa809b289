// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_GRAD_GRAD_CHECK_HPP_
#define RICA_GRAD_GRAD_CHECK_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "rica/grad/backward.hpp"
#include "rica/matcore/rng.hpp"

namespace rica {

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;  // flat index within worst_param
  std::size_t checked = 0;
  bool pass = false;
};

// Central-difference check of batch_backward. Coordinate theta is perturbed
// by step * max(1, |theta|) in both directions; the relative error
// |analytic - fd| / max(|analytic|, |fd|, 1e-8) is compared to tol. Models
// with more than max_coords coordinates get a uniform subsample drawn
// without replacement from rng; smaller ones are checked exhaustively.
GradCheckReport grad_check(const ModelParams& p, const ModelOptions& opts,
                           const std::vector<DenseMatrix>& batch,
                           const std::vector<DropoutMask>& masks, double step,
                           double tol, RngStream& rng,
                           std::size_t max_coords = 5000);

// Same comparison against a caller-supplied gradient instead of one from
// batch_backward. Lets a deliberately wrong gradient demonstrate that the
// check actually rejects.
GradCheckReport grad_check_against(const ModelParams& p,
                                   const ModelOptions& opts,
                                   const std::vector<DenseMatrix>& batch,
                                   const std::vector<DropoutMask>& masks,
                                   const ParamBlock& analytic, double step,
                                   double tol, RngStream& rng,
                                   std::size_t max_coords = 5000);

}  // namespace rica

#endif  // RICA_GRAD_GRAD_CHECK_HPP_
