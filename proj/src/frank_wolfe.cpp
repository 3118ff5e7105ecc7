//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/frank_wolfe.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "gmrelax/hungarian.hpp"

namespace gmrelax {

FWResult frank_wolfe(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                     const DoublyStochasticMatrix& q0,
                     const FrankWolfeOptions& options) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n || q0.size() != n)
    throw std::invalid_argument("frank_wolfe: size mismatch");

  Eigen::MatrixXd q = q0.matrix();
  Eigen::MatrixXd r = a * q - q * b;
  double objective = r.squaredNorm();
  double gap = 0.0;
  int it = 0;
  bool converged = false;

  for (;; ++it) {
    if (options.observer) options.observer(it, q, objective);
    const Eigen::MatrixXd grad = 2.0 * (a * r - r * b);
    const auto vertex = hungarian(grad);
    const Eigen::MatrixXd s = vertex.permutation.matrix<double>();
    const Eigen::MatrixXd d = s - q;
    gap = -(grad.cwiseProduct(d)).sum();
    if (gap <= options.tolerance) {
      converged = true;
      break;
    }
    if (it >= options.max_iterations) break;

    // f(Q + g D) = ||R + g RD||^2 = f + 2 g <R, RD> + g^2 ||RD||^2.
    const Eigen::MatrixXd rd = a * d - d * b;
    const double quad = rd.squaredNorm();
    const double lin = 2.0 * r.cwiseProduct(rd).sum();
    double step;
    if (quad <= 1e-300) {
      if (lin >= 0.0) break;
      step = 1.0;
    } else {
      step = std::clamp(-lin / (2.0 * quad), 0.0, 1.0);
    }
    if (step == 0.0) break;

    q += step * d;
    r += step * rd;
    const double next = r.squaredNorm();
    assert(next <= objective + 1e-12 * std::max(1.0, objective));
    objective = next;
  }

  // Recompute from scratch so the reported value carries no drift.
  objective = relaxed_objective(a, q, b);
  return FWResult{DoublyStochasticMatrix(std::move(q), 1e-9), objective, gap, it,
                  converged};
}

Permutation round_to_permutation(const DoublyStochasticMatrix& q) {
  return hungarian(Eigen::MatrixXd(-q.matrix())).permutation;
}

}  // namespace gmrelax
