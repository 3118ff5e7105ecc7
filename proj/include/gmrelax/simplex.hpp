//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace gmrelax {

/// maximize c^T x  s.t.  A x = b,  lower <= x <= upper.
/// Empty `lower` means all zeros, empty `upper` means all +inf; either
/// bound may be infinite per variable.
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd equality_matrix;
  Eigen::VectorXd equality_rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { optimal, unbounded, infeasible };

constexpr std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::infeasible: break;
  }
  return "infeasible";
}

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Eigen::VectorXd x;  // meaningful when optimal
  double value = 0.0;
  int pivots = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-9;      // smallest usable pivot magnitude
  double cost_tol = 1e-9;       // reduced cost needed to enter the basis
  double feasibility_tol = 1e-9;
  int max_pivots = 1000000;
};

/// Dense two-phase tableau simplex. Dantzig pricing, with Bland's rule
/// taking over on degenerate runs so the method cannot cycle. Redundant
/// equality rows are removed up front and the tableau is periodically
/// rebuilt from the original data to bound round-off.
/// Throws std::invalid_argument on inconsistent dimensions or non-finite
/// data, std::runtime_error if max_pivots is exhausted.
LpSolution simplex_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace gmrelax
