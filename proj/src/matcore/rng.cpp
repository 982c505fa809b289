// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/matcore/rng.hpp"

#include <cmath>

#include "rica/errors.hpp"

namespace rica {

namespace {

constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      base_(mix(seed + kPhi * mix(stream + kPhi))),
      counter_(0) {}

RngStream RngStream::restore(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t counter) {
  RngStream r(seed, stream);
  r.counter_ = counter;
  return r;
}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix(base_ + kPhi * counter_);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RngStream::normal() {
  // Box-Muller, cosine branch only: keeps the state a pure draw counter.
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 0.0) u1 = 0x1.0p-53;  // uniform() == 0 exactly
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(2.0 * M_PI * u2);
}

double RngStream::laplace_unit() {
  // Inverse CDF; scale 1/sqrt(2) gives unit variance.
  const double v = uniform() - 0.5;
  const double b = 1.0 / std::sqrt(2.0);
  double a = 1.0 - 2.0 * std::fabs(v);
  if (a < 0x1.0p-53) a = 0x1.0p-53;
  return (v >= 0.0 ? -b : b) * std::log(a);
}

double RngStream::logistic(double mu, double s) {
  double u = uniform();
  if (u <= 0.0) u = 0x1.0p-53;
  if (u >= 1.0) u = 1.0 - 0x1.0p-53;
  return mu + s * std::log(u / (1.0 - u));
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "below(0)");
  // Multiply-shift partition of the 64-bit range; bias is negligible for the
  // small n used here (shuffles, subsampling).
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(next_u64()) * n;
  return static_cast<std::uint64_t>(wide >> 64);
}

}  // namespace rica
