//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gmrelax/doubly_stochastic.hpp"
#include "gmrelax/frank_wolfe.hpp"
#include "gmrelax/graph.hpp"
#include "gmrelax/labels.hpp"
#include "gmrelax/spectral.hpp"

namespace gmrelax {

/// An internal invariant failed: a solver produced something the theory
/// rules out. Never a user error.
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Q = P * P0 (matrix product under the P[i][sigma(i)] = 1 convention).
DoublyStochasticMatrix change_of_variables(const DoublyStochasticMatrix& p,
                                           const Permutation& p0);

/// For simple-spectrum A, the doubly stochastic matrices commuting with A
/// are exactly Q(f) = I - sum_i (1 - f_i) u_i u_i^T over the k eigenvectors
/// u_i orthogonal to 1, subject to Q(f) >= 0 entrywise. The row and column
/// sums are automatic since u_i^T 1 = 0.
///
/// Constraints are stored in g = 1 - f coordinates, one row per pair a <= b:
///   sum_i g_i u_i[a] u_i[b] <= delta_ab.
class CommutantPolytope {
 public:
  CommutantPolytope(Eigen::MatrixXd ortho_vectors);

  int k() const { return static_cast<int>(vectors_.cols()); }
  int n() const { return static_cast<int>(vectors_.rows()); }
  const Eigen::MatrixXd& ortho_vectors() const { return vectors_; }
  const Eigen::MatrixXd& constraint_matrix() const { return coeffs_; }
  const Eigen::VectorXd& constraint_rhs() const { return rhs_; }

  Eigen::MatrixXd matrix_at(const Eigen::VectorXd& f) const;
  bool contains(const Eigen::VectorXd& f, double tol = 1e-9) const;

 private:
  Eigen::MatrixXd vectors_;
  Eigen::MatrixXd coeffs_;
  Eigen::VectorXd rhs_;
};

/// Throws std::invalid_argument if the spectrum is repeated.
CommutantPolytope commutant_polytope(const SpectralDecomposition& dec,
                                     const SupportProfile& profile,
                                     double eig_tol = 1e-8);

enum class CertificateMethod { fast_path, general_lp };

constexpr std::string_view to_string(CertificateMethod m) {
  return m == CertificateMethod::fast_path ? "fast_path" : "general_lp";
}

struct UniquenessCertificate {
  Verdict verdict = Verdict::unique;
  /// Maximum total off-diagonal mass over {Q doubly stochastic : AQ = QA}.
  double lp_optimum = 0.0;
  std::optional<Eigen::MatrixXd> witness;
  CertificateMethod method = CertificateMethod::general_lp;
  /// lp_optimum within [cert/100, 100 cert].
  bool marginal = false;
  int lp_pivots = 0;
};

/// Simple-spectrum certificate. The off-diagonal mass of Q(f) equals
/// trace(L) = sum_i (1 - f_i), because L 1 = 0 and each u_i has unit norm,
/// so the LP is: maximize sum_i g_i subject to Q(1 - g) >= 0, g free.
UniquenessCertificate certify_uniqueness_fast(const SpectralDecomposition& dec,
                                              const SupportProfile& profile,
                                              double cert_tol = 1e-7,
                                              double eig_tol = 1e-8);

/// Certificate over the n^2 entries of Q directly: maximize sum_{p != q} Q_pq
/// subject to AQ = QA, Q 1 = 1, Q^T 1 = 1, Q >= 0. Valid for any spectrum.
UniquenessCertificate certify_uniqueness_general(const Eigen::MatrixXd& a,
                                                 double cert_tol = 1e-7);

inline UniquenessCertificate certify_uniqueness_general(const Graph& g,
                                                        double cert_tol = 1e-7) {
  return certify_uniqueness_general(g.matrix<double>(), cert_tol);
}

/// L = sum_i (1 - f_i) u_i u_i^T together with the Laplacian checks.
struct LaplacianCheck {
  Eigen::MatrixXd l;
  double row_sum_error = 0.0;   // ||L 1||_inf
  double asymmetry = 0.0;       // ||L - L^T||_max
  double max_off_diagonal = 0.0;
  double min_diagonal = 0.0;
  int rank = 0;                 // eigenvalues above 1e-8 in magnitude
  bool laplacian = false;       // all sign and sum checks pass within eps
};

/// Throws std::invalid_argument if f has the wrong length or Q(f) has an
/// entry below -eps.
LaplacianCheck build_L(const CommutantPolytope& polytope, const Eigen::VectorXd& f,
                       double eps = 1e-9);

struct ExactMatch {
  Permutation permutation;  // apply_permutation(a, permutation) is closest to b
  long objective = 0;       // ||P A P^T - B||_F^2, an exact integer
};

/// ||apply_permutation(a, sigma) - b||_F^2 in integer arithmetic.
long match_objective(const Graph& a, const Graph& b, const Permutation& sigma);

/// Branch and bound over all permutations. Vertices of b are placed rarest
/// degree class first; a partial assignment is cut when the sum over placed
/// rows of max(disagreements so far, |degree difference|) reaches the best
/// objective found. Throws std::invalid_argument when n > node_cap or the
/// sizes differ.
ExactMatch exact_match(const Graph& a, const Graph& b, int node_cap = 10);

struct MatchConfig {
  FrankWolfeOptions fw;
  int exact_cap = 10;
  bool certify = true;
  Tolerances tol;
};

struct MatchReport {
  std::optional<ExactMatch> exact;
  FWResult relaxed;
  Permutation rounded;      // same orientation as ExactMatch::permutation
  long rounded_objective = 0;
  std::optional<UniquenessCertificate> certificate;  // on A
  bool equivalent = false;  // certificate verdict is unique
  std::optional<bool> isomorphic;
  std::vector<std::string> notes;
};

/// Frank-Wolfe from the barycenter, rounding, optional exact search and the
/// uniqueness certificate of A.
MatchReport relax_and_round(const Graph& a, const Graph& b,
                            const MatchConfig& config = {});

Prediction predict_equivalence(const SpectralClassification& c);

}  // namespace gmrelax
