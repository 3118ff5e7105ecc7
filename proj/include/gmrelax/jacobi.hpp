//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gmrelax/doubly_stochastic.hpp"

namespace gmrelax {

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

template <typename Scalar>
struct JacobiEigen {
  VectorX<Scalar> values;   // ascending
  MatrixX<Scalar> vectors;  // columns aligned with values
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix. Rotations are
/// applied row-by-row over the strict upper triangle until the off-diagonal
/// Frobenius mass drops below machine epsilon times the input norm.
/// Eigenpairs are returned in ascending eigenvalue order; ties keep the
/// order in which the sweep left them.
template <typename Derived>
JacobiEigen<typename Derived::Scalar> jacobi_eigen(
    const Eigen::MatrixBase<Derived>& input, int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;

  const Eigen::Index n = input.rows();
  if (n != input.cols()) throw std::invalid_argument("jacobi: matrix not square");

  MatrixX<Scalar> a = input;
  MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);
  const Scalar norm = a.norm();
  const Scalar target = std::numeric_limits<Scalar>::epsilon() * norm;

  auto off_mass = [&]() {
    Scalar s = 0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) s += a(p, q) * a(p, q);
    return sqrt(Scalar(2) * s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_mass() <= target) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        if (!rot.makeJacobi(a(p, p), a(p, q), a(q, q))) continue;
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
        a(p, q) = a(q, p) = Scalar(0);
      }
    }
  }
  if (sweep == max_sweeps && off_mass() > target) {
    const MatrixX<Scalar> recon =
        v * a.diagonal().asDiagonal() * v.transpose();
    throw ConvergenceError("jacobi: no convergence within sweep cap",
                           static_cast<double>((recon - input).norm()));
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x) < a(y, y);
  });

  JacobiEigen<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  out.sweeps = sweep;
  return out;
}

}  // namespace gmrelax
