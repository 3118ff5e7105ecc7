//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <functional>

#include <Eigen/Dense>

#include "gmrelax/doubly_stochastic.hpp"
#include "gmrelax/graph.hpp"

namespace gmrelax {

/// f(Q) = ||A Q - Q B||_F^2.
template <typename DA, typename DQ, typename DB>
typename DQ::Scalar relaxed_objective(const Eigen::MatrixBase<DA>& a,
                                      const Eigen::MatrixBase<DQ>& q,
                                      const Eigen::MatrixBase<DB>& b) {
  return (a * q - q * b).squaredNorm();
}

/// Gradient of f for symmetric A and B: 2 (A R - R B) with R = A Q - Q B.
template <typename DA, typename DQ, typename DB>
MatrixX<typename DQ::Scalar> relaxed_gradient(const Eigen::MatrixBase<DA>& a,
                                              const Eigen::MatrixBase<DQ>& q,
                                              const Eigen::MatrixBase<DB>& b) {
  const MatrixX<typename DQ::Scalar> r = a * q - q * b;
  return 2 * (a * r - r * b);
}

struct FrankWolfeOptions {
  double tolerance = 1e-9;  // on the Frank-Wolfe gap <grad f(Q), Q - S>
  int max_iterations = 50000;
  /// Called with (iteration, iterate, objective) before every step and once
  /// for the final iterate.
  std::function<void(int, const Eigen::MatrixXd&, double)> observer;
};

struct FWResult {
  DoublyStochasticMatrix q;
  double objective = 0.0;
  double dual_gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes ||A Q - Q B||_F^2 over doubly stochastic Q from q0. The linear
/// minimization oracle is the Hungarian method on the gradient and the step
/// is the exact minimizer of the quadratic along the segment, clamped to
/// [0, 1]. Non-convergence is reported through `converged`, never thrown.
FWResult frank_wolfe(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                     const DoublyStochasticMatrix& q0,
                     const FrankWolfeOptions& options = {});

inline FWResult frank_wolfe(const Graph& a, const Graph& b,
                            const DoublyStochasticMatrix& q0,
                            const FrankWolfeOptions& options = {}) {
  return frank_wolfe(a.matrix<double>(), b.matrix<double>(), q0, options);
}

/// argmax_sigma sum_i Q[i][sigma(i)], via the Hungarian method on -Q.
Permutation round_to_permutation(const DoublyStochasticMatrix& q);

}  // namespace gmrelax
