//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace gmrelax {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// True iff every entry is >= -tol and every row and column sums to one
/// within tol. Non-square input is never doubly stochastic.
template <typename Derived>
bool is_doubly_stochastic(const Eigen::MatrixBase<Derived>& m,
                          typename Derived::Scalar tol) {
  using std::abs;
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return false;
  if (!m.allFinite()) return false;
  if (m.minCoeff() < -tol) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (abs(m.row(i).sum() - 1) > tol) return false;
    if (abs(m.col(i).sum() - 1) > tol) return false;
  }
  return true;
}

/// A point of the Birkhoff polytope, validated at construction.
class DoublyStochasticMatrix {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  explicit DoublyStochasticMatrix(Eigen::MatrixXd q,
                                  double tol = kDefaultTolerance)
      : q_(std::move(q)), tol_(tol) {
    if (!is_doubly_stochastic(q_, tol_))
      throw std::invalid_argument("matrix is not doubly stochastic");
  }

  const Eigen::MatrixXd& matrix() const { return q_; }
  double tolerance() const { return tol_; }
  Eigen::Index size() const { return q_.rows(); }

  double operator()(Eigen::Index i, Eigen::Index j) const { return q_(i, j); }

 private:
  Eigen::MatrixXd q_;
  double tol_;
};

}  // namespace gmrelax
