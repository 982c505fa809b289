// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"

namespace rica {

// Directed weighted graph over components plus an optional partition,
// the unit handed to the DOT/SVG exporters.
struct ConnectivityGraph {
  std::vector<std::string> labels;         // one per node
  DenseMatrix weights;                     // n x n, weights(i, j) is i -> j
  std::vector<std::uint32_t> communities;  // empty, or one id per node,
                                           // ids contiguous from 0
};

struct LouvainResult {
  std::vector<std::uint32_t> labels;  // contiguous from 0, first-seen order
  double modularity = 0.0;
};

// Newman modularity of a partition of the undirected graph w.
double modularity(const DenseMatrix& w, const std::vector<std::uint32_t>& labels);

// Multi-level greedy modularity optimization (Blondel et al.), best of a
// few seeded visit-order restarts. Needs a symmetric nonnegative matrix
// with a zero diagonal. Deterministic for a fixed seed; an edgeless graph
// comes back as singletons with Q = 0.
LouvainResult louvain(const DenseMatrix& w, std::uint64_t seed = 0);

}  // namespace rica
