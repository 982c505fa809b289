// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_MODEL_ACTIVATIONS_HPP_
#define RICA_MODEL_ACTIVATIONS_HPP_

#include <cmath>

namespace rica {

// Overflow-safe scalar nonlinearities; exact to double precision on |x| well
// past 1e4.

inline double softplus(double x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace rica

#endif  // RICA_MODEL_ACTIVATIONS_HPP_
