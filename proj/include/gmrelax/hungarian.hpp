//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gmrelax/graph.hpp"

namespace gmrelax {

template <typename Scalar>
struct Assignment {
  Permutation permutation;  // row i is assigned column permutation(i)
  Scalar cost;
};

/// Minimum-cost perfect assignment on a square cost matrix, by the
/// shortest-augmenting-path Hungarian method with row/column potentials.
/// O(n^3), exact.
template <typename Derived>
Assignment<typename Derived::Scalar> hungarian(const Eigen::MatrixBase<Derived>& cost) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(cost.rows());
  if (n != cost.cols() || n == 0)
    throw std::invalid_argument("hungarian: cost matrix must be square and non-empty");
  if (!cost.allFinite()) throw std::invalid_argument("hungarian: non-finite cost");

  const Scalar inf = std::numeric_limits<Scalar>::has_infinity
                         ? std::numeric_limits<Scalar>::infinity()
                         : std::numeric_limits<Scalar>::max();
  // 1-based: index 0 is the virtual column/row used to seed each phase.
  std::vector<Scalar> row_pot(n + 1, Scalar(0)), col_pot(n + 1, Scalar(0));
  std::vector<int> match(n + 1, 0), way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<Scalar> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      Scalar delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Scalar cur = cost(i0 - 1, j - 1) - row_pot[i0] - col_pot[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          row_pot[match[j]] += delta;
          col_pot[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> images(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) images[static_cast<std::size_t>(match[j] - 1)] = j - 1;
  Scalar total = 0;
  for (int i = 0; i < n; ++i) total += cost(i, images[static_cast<std::size_t>(i)]);
  return {Permutation(std::move(images)), total};
}

}  // namespace gmrelax
