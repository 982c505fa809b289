// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_MATCORE_RNG_HPP_
#define RICA_MATCORE_RNG_HPP_

#include <cstdint>
#include <vector>

namespace rica {

// Counter-based generator. Draw i of stream (seed, stream) is
//
//   mix(base + PHI * (i + 1)),   base = mix(seed + PHI * mix(stream + PHI))
//
// where PHI = 0x9E3779B97F4A7C15 and mix is the SplitMix64 finalizer
// (xor-shift / multiply avalanche). The full state is the (seed, stream,
// counter) triple, so a stream can be checkpointed and resumed exactly, and
// per-subject streams are independent by construction.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream);

  static RngStream restore(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter);

  std::uint64_t next_u64();

  // [0, 1), 53-bit resolution
  double uniform();
  double uniform(double lo, double hi);
  // unit-variance Box-Muller normal; consumes exactly two draws per call
  double normal();
  // unit-variance Laplace (scale 1/sqrt(2)); one draw per call
  double laplace_unit();
  // standard logistic location mu, scale s; one draw per call
  double logistic(double mu, double s);

  // uniform integer in [0, n); n >= 1
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t base_;
  std::uint64_t counter_;
};

// Stream-id layout: purpose tag in the top bits, index below. Keeps subject
// streams, the training stream, and synth internals disjoint for one seed.
namespace stream_id {
constexpr std::uint64_t make(std::uint64_t kind, std::uint64_t index) {
  return (kind << 40) | index;
}
constexpr std::uint64_t kInit = make(1, 0);
constexpr std::uint64_t kTrain = make(2, 0);
constexpr std::uint64_t kMixing = make(3, 0);
constexpr std::uint64_t kCovariance = make(4, 0);
constexpr std::uint64_t subject(std::uint64_t index) { return make(8, index); }
constexpr std::uint64_t generic(std::uint64_t index) { return make(9, index); }
}  // namespace stream_id

}  // namespace rica

#endif  // RICA_MATCORE_RNG_HPP_
