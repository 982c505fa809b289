// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_MATCORE_PARALLEL_HPP_
#define RICA_MATCORE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace rica {

// Worker cap: RICA_THREADS if set (>= 1), otherwise hardware concurrency.
std::size_t worker_count();

// Runs fn(i) for i in [0, n) across up to worker_count() threads. Each index
// is handled exactly once; callers own any ordered post-merge, so results must
// be written to disjoint, index-addressed slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rica

#endif  // RICA_MATCORE_PARALLEL_HPP_
