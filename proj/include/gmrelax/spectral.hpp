//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gmrelax/graph.hpp"

namespace gmrelax {

/// Numerical thresholds. Every report records the effective values.
struct Tolerances {
  /// Relative gap below which consecutive eigenvalues count as repeated.
  double eig = 1e-8;
  /// Absolute |u^T 1| threshold; unset means 1e-8 * sqrt(n).
  std::optional<double> orth;
  /// Absolute threshold for a nonzero eigenvector entry.
  double supp = 1e-8;
  /// Certificate threshold on the off-diagonal LP optimum.
  double cert = 1e-7;

  double orth_for(int n) const {
    return orth ? *orth : 1e-8 * std::sqrt(static_cast<double>(n));
  }
};

/// A value lies within a factor of 100 of its threshold.
inline bool near_threshold(double value, double threshold) {
  const double a = std::abs(value);
  return a > threshold / 100.0 && a <= threshold * 100.0;
}

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd vectors;       // unit columns aligned with eigenvalues
  Eigen::VectorXd ones_projection;  // v = U^T 1
  double residual = 0.0;         // ||A - U D U^T||_F
  int sweeps = 0;
};

struct EigenOptions {
  /// Relative clustering tolerance for repeated eigenvalues.
  double cluster_tol = 1e-8;
  /// Projections of 1 onto an eigenspace below this count as zero;
  /// unset means 1e-8 * sqrt(n).
  std::optional<double> ones_tol;
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Within a repeated eigenspace the basis is fixed as follows: if the
/// eigenspace is orthogonal to 1 the Jacobi basis is kept; otherwise it is
/// reflected so that 1 projects equally onto every basis vector, which makes
/// no vector of that eigenspace orthogonal to 1. Each column is then signed
/// so that its entry of largest magnitude (lowest index on ties) is positive.
///
/// Throws std::invalid_argument for non-symmetric input (1e-12 absolute)
/// and ConvergenceError if the sweep cap is hit.
SpectralDecomposition eigendecompose(const Eigen::MatrixXd& a,
                                     const EigenOptions& options = {});

SpectralDecomposition eigendecompose(const Graph& g,
                                     const EigenOptions& options = {});

struct SupportProfile {
  std::vector<int> ortho_indices;  // eigenvector indices with |v_i| <= orth
  std::vector<int> supports;       // l0 support of each, same order
  int k = 0;
  bool marginal = false;           // some |v_i| or |U_ji| near a threshold

  std::vector<int> sorted_supports() const;
};

SupportProfile support_profile(const SpectralDecomposition& dec, double orth_tol,
                               double supp_tol);

double spectral_range(const SpectralDecomposition& dec);
double min_eigen_gap(const SpectralDecomposition& dec);

bool has_simple_spectrum(const SpectralDecomposition& dec, double eig_tol);

/// The simplicity decision is close to its threshold.
bool spectrum_marginal(const SpectralDecomposition& dec, double eig_tol);

bool is_friendly(const SupportProfile& profile, bool simple);

/// Every eigenvector orthogonal to 1 has at least 2k+1 nonzero entries.
bool theorem_2k1_applies(const SupportProfile& profile, bool simple);

/// With supports ascending, the i-th (1-based) has at least 2i+1 entries.
bool theorem_sorted_applies(const SupportProfile& profile, bool simple);

struct SpectralClassification {
  bool simple_spectrum = false;
  bool friendly = false;
  bool regular = false;
  std::optional<int> degree;
  int k = 0;
  std::vector<int> supports;  // ascending
  bool theorem_2k1 = false;
  bool theorem_sorted = false;
  bool marginal = false;
  double min_gap = 0.0;
  Eigen::VectorXd eigenvalues;
  Tolerances tolerances;  // effective values, orth resolved
};

SpectralClassification classify(const Graph& g, const Tolerances& tol = {});

/// Same as classify(), reusing an existing decomposition of g.
SpectralClassification classify(const Graph& g, const SpectralDecomposition& dec,
                                const Tolerances& tol);

}  // namespace gmrelax
