// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_TESTS_SUPPORT_ASSIGNMENT_HPP_
#define RICA_TESTS_SUPPORT_ASSIGNMENT_HPP_

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"

namespace testsupport {

// Exact maximum-weight assignment by bitmask dynamic programming (n <= 20).
// Returns the best total score; if perm is non-null, perm[i] is the column
// matched to row i.
inline double best_assignment(const rica::DenseMatrix& score,
                              std::vector<std::size_t>* perm = nullptr) {
  const std::size_t n = score.rows();
  if (n != score.cols() || n == 0 || n > 20) {
    throw std::invalid_argument("best_assignment: need square n in [1, 20]");
  }
  const std::size_t full = (std::size_t{1} << n) - 1;
  const double neg = -std::numeric_limits<double>::infinity();
  std::vector<double> dp(full + 1, neg);
  std::vector<std::size_t> choice(full + 1, n);
  dp[0] = 0.0;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (dp[mask] == neg) continue;
    std::size_t row = 0;
    for (std::size_t m = mask; m != 0; m >>= 1) row += m & 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (mask & (std::size_t{1} << col)) continue;
      const std::size_t next = mask | (std::size_t{1} << col);
      const double cand = dp[mask] + score(row, col);
      if (cand > dp[next]) {
        dp[next] = cand;
        choice[next] = col;
      }
    }
  }
  if (perm != nullptr) {
    perm->assign(n, 0);
    std::size_t mask = full;
    for (std::size_t row = n; row-- > 0;) {
      const std::size_t col = choice[mask];
      (*perm)[row] = col;
      mask &= ~(std::size_t{1} << col);
    }
  }
  return dp[full];
}

}  // namespace testsupport

#endif  // RICA_TESTS_SUPPORT_ASSIGNMENT_HPP_
