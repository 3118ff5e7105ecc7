//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "gmrelax/simplex.hpp"

namespace gmrelax {

DoublyStochasticMatrix change_of_variables(const DoublyStochasticMatrix& p,
                                           const Permutation& p0) {
  if (p.size() != p0.size())
    throw std::invalid_argument("change_of_variables: size mismatch");
  return DoublyStochasticMatrix(p.matrix() * p0.matrix<double>(), p.tolerance());
}

CommutantPolytope::CommutantPolytope(Eigen::MatrixXd ortho_vectors)
    : vectors_(std::move(ortho_vectors)) {
  const Eigen::Index n = vectors_.rows(), k = vectors_.cols();
  const Eigen::Index m = n * (n + 1) / 2;
  coeffs_.resize(m, k);
  rhs_.resize(m);
  Eigen::Index row = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b, ++row) {
      coeffs_.row(row) = vectors_.row(a).cwiseProduct(vectors_.row(b));
      rhs_(row) = a == b ? 1.0 : 0.0;
    }
  }
}

Eigen::MatrixXd CommutantPolytope::matrix_at(const Eigen::VectorXd& f) const {
  if (f.size() != k())
    throw std::invalid_argument("CommutantPolytope: f has length " +
                                std::to_string(f.size()) + ", expected " +
                                std::to_string(k()));
  const Eigen::VectorXd g = Eigen::VectorXd::Ones(k()) - f;
  return Eigen::MatrixXd::Identity(n(), n()) - vectors_ * g.asDiagonal() * vectors_.transpose();
}

bool CommutantPolytope::contains(const Eigen::VectorXd& f, double tol) const {
  return matrix_at(f).minCoeff() >= -tol;
}

CommutantPolytope commutant_polytope(const SpectralDecomposition& dec,
                                     const SupportProfile& profile,
                                     double eig_tol) {
  if (!has_simple_spectrum(dec, eig_tol))
    throw std::invalid_argument(
        "commutant_polytope: repeated spectrum, use the general certificate");
  Eigen::MatrixXd u(dec.vectors.rows(), profile.k);
  for (int i = 0; i < profile.k; ++i)
    u.col(i) = dec.vectors.col(profile.ortho_indices[static_cast<std::size_t>(i)]);
  return CommutantPolytope(std::move(u));
}

namespace {

// Witness checks shared by both certificates.
void validate_witness(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q,
                      double cert_tol, const char* who) {
  const double comm = (a * q - q * a).cwiseAbs().maxCoeff();
  const double dist = (q - Eigen::MatrixXd::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
  if (comm > 1e-7 || !is_doubly_stochastic(q, 1e-7) || dist <= 10.0 * cert_tol)
    throw DefectError(std::string(who) + ": witness fails validation (commutator " +
                      std::to_string(comm) + ", distance from I " +
                      std::to_string(dist) + ")");
}

}  // namespace

UniquenessCertificate certify_uniqueness_fast(const SpectralDecomposition& dec,
                                              const SupportProfile& profile,
                                              double cert_tol, double eig_tol) {
  const CommutantPolytope poly = commutant_polytope(dec, profile, eig_tol);
  UniquenessCertificate cert;
  cert.method = CertificateMethod::fast_path;
  if (poly.k() == 0) return cert;

  // Variables: g (free, k of them) then one slack per constraint row.
  const Eigen::Index k = poly.k();
  const Eigen::Index m = poly.constraint_matrix().rows();
  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(k + m);
  lp.objective.head(k).setOnes();
  lp.equality_matrix.resize(m, k + m);
  lp.equality_matrix << poly.constraint_matrix(), Eigen::MatrixXd::Identity(m, m);
  lp.equality_rhs = poly.constraint_rhs();
  lp.lower = Eigen::VectorXd::Zero(k + m);
  lp.lower.head(k).setConstant(-std::numeric_limits<double>::infinity());

  const LpSolution sol = simplex_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw DefectError("certify_uniqueness_fast: LP " + std::string(to_string(sol.status)) +
                      " although f = 1 is feasible and Q(f) is bounded");
  cert.lp_optimum = sol.value;
  cert.lp_pivots = sol.pivots;
  cert.marginal = near_threshold(sol.value, cert_tol);
  if (sol.value <= cert_tol) return cert;

  cert.verdict = Verdict::non_unique;
  const Eigen::VectorXd f = Eigen::VectorXd::Ones(k) - sol.x.head(k);
  Eigen::MatrixXd q = poly.matrix_at(f);
  const Eigen::MatrixXd a =
      dec.vectors * dec.eigenvalues.asDiagonal() * dec.vectors.transpose();
  validate_witness(a, q, cert_tol, "certify_uniqueness_fast");
  cert.witness = std::move(q);
  return cert;
}

UniquenessCertificate certify_uniqueness_general(const Eigen::MatrixXd& a,
                                                 double cert_tol) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || n == 0)
    throw std::invalid_argument("certify_uniqueness_general: matrix must be square and non-empty");
  const auto var = [n](Eigen::Index p, Eigen::Index q) { return p * n + q; };

  // (AQ - QA)_ij = sum_t A_it Q_tj - sum_t Q_it A_tj. Rows that vanish
  // identically are dropped.
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXd r = Eigen::VectorXd::Zero(n * n);
      for (Eigen::Index t = 0; t < n; ++t) {
        r(var(t, j)) += a(i, t);
        r(var(i, t)) -= a(t, j);
      }
      if (r.cwiseAbs().maxCoeff() > 0.0) {
        rows.push_back(std::move(r));
        rhs.push_back(0.0);
      }
    }
  }
  for (Eigen::Index p = 0; p < n; ++p) {
    Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(n * n);
    Eigen::VectorXd col_sum = Eigen::VectorXd::Zero(n * n);
    for (Eigen::Index q = 0; q < n; ++q) {
      row_sum(var(p, q)) = 1.0;
      col_sum(var(q, p)) = 1.0;
    }
    rows.push_back(std::move(row_sum));
    rhs.push_back(1.0);
    rows.push_back(std::move(col_sum));
    rhs.push_back(1.0);
  }

  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Ones(n * n);
  for (Eigen::Index p = 0; p < n; ++p) lp.objective(var(p, p)) = 0.0;
  lp.equality_matrix.resize(static_cast<Eigen::Index>(rows.size()), n * n);
  lp.equality_rhs.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    lp.equality_matrix.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    lp.equality_rhs(static_cast<Eigen::Index>(r)) = rhs[r];
  }

  const LpSolution sol = simplex_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw DefectError("certify_uniqueness_general: LP " +
                      std::string(to_string(sol.status)) +
                      " although the identity is feasible and Q is bounded");
  UniquenessCertificate cert;
  cert.method = CertificateMethod::general_lp;
  cert.lp_optimum = sol.value;
  cert.lp_pivots = sol.pivots;
  cert.marginal = near_threshold(sol.value, cert_tol);
  if (sol.value <= cert_tol) return cert;

  cert.verdict = Verdict::non_unique;
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index t = 0; t < n; ++t) q(p, t) = sol.x(var(p, t));
  validate_witness(a, q, cert_tol, "certify_uniqueness_general");
  cert.witness = std::move(q);
  return cert;
}

LaplacianCheck build_L(const CommutantPolytope& polytope, const Eigen::VectorXd& f,
                       double eps) {
  const Eigen::MatrixXd q = polytope.matrix_at(f);
  if (q.minCoeff() < -eps)
    throw std::invalid_argument("build_L: f lies outside the commutant polytope (min entry " +
                                std::to_string(q.minCoeff()) + ")");
  const Eigen::Index n = q.rows();
  LaplacianCheck out;
  out.l = Eigen::MatrixXd::Identity(n, n) - q;
  out.row_sum_error = (out.l * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
  out.asymmetry = (out.l - out.l.transpose()).cwiseAbs().maxCoeff();
  out.max_off_diagonal = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) out.max_off_diagonal = std::max(out.max_off_diagonal, out.l(i, j));
  if (n == 1) out.max_off_diagonal = 0.0;
  out.min_diagonal = out.l.diagonal().minCoeff();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.l, Eigen::EigenvaluesOnly);
  out.rank = static_cast<int>((es.eigenvalues().array().abs() > 1e-8).count());
  out.laplacian = out.row_sum_error <= eps && out.asymmetry <= eps &&
                  out.max_off_diagonal <= eps && out.min_diagonal >= -eps;
  return out;
}

long match_objective(const Graph& a, const Graph& b, const Permutation& sigma) {
  const int n = a.order();
  if (b.order() != n || sigma.size() != n)
    throw std::invalid_argument("match_objective: size mismatch");
  long d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d += a.adjacency()(sigma(i), sigma(j)) != b.adjacency()(i, j);
  return d;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Graph& a, const Graph& b)
      : a_(a.adjacency()), b_(b.adjacency()), n_(a.order()),
        deg_a_(a.degrees()), deg_b_(b.degrees()) {
    // Place b's vertices rarest degree class first, then higher degree.
    std::vector<int> class_size(static_cast<std::size_t>(n_ + 1), 0);
    for (int d : deg_b_) ++class_size[static_cast<std::size_t>(d)];
    order_.resize(static_cast<std::size_t>(n_));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      const int cx = class_size[static_cast<std::size_t>(deg_b_[static_cast<std::size_t>(x)])];
      const int cy = class_size[static_cast<std::size_t>(deg_b_[static_cast<std::size_t>(y)])];
      if (cx != cy) return cx < cy;
      return deg_b_[static_cast<std::size_t>(x)] > deg_b_[static_cast<std::size_t>(y)];
    });
    sigma_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), false);
    mism_.assign(static_cast<std::size_t>(n_), 0);
  }

  ExactMatch run() {
    search(0, 0);
    return ExactMatch{Permutation(best_sigma_), best_};
  }

 private:
  // bound = sum over placed rows of max(mismatches, |degree difference|),
  // a lower bound on every completion because each row's final mismatch
  // count is at least both terms.
  void search(int depth, long bound) {
    if (best_ == 0) return;
    if (depth == n_) {
      long total = 0;
      for (int m : mism_) total += m;
      if (total < best_) {
        best_ = total;
        best_sigma_ = sigma_;
      }
      return;
    }
    const int i = order_[static_cast<std::size_t>(depth)];
    for (int w : candidates(i)) {
      sigma_[static_cast<std::size_t>(i)] = w;
      used_[static_cast<std::size_t>(w)] = true;

      // Mismatches between i and placed vertices (and i itself). Each pair
      // contributes to both rows.
      int own = a_(w, w) != b_(i, i) ? 1 : 0;
      long new_bound = bound;
      std::vector<std::pair<int, int>> touched;
      for (int d = 0; d < depth; ++d) {
        const int j = order_[static_cast<std::size_t>(d)];
        const int wj = sigma_[static_cast<std::size_t>(j)];
        if (a_(w, wj) != b_(i, j)) {
          ++own;
          const auto sj = static_cast<std::size_t>(j);
          const long before = row_bound(j);
          ++mism_[sj];
          new_bound += row_bound(j) - before;
          touched.emplace_back(j, 1);
        }
      }
      mism_[static_cast<std::size_t>(i)] = own;
      new_bound += row_bound(i);

      if (new_bound < best_) search(depth + 1, new_bound);

      for (const auto& [j, c] : touched) mism_[static_cast<std::size_t>(j)] -= c;
      mism_[static_cast<std::size_t>(i)] = 0;
      used_[static_cast<std::size_t>(w)] = false;
      sigma_[static_cast<std::size_t>(i)] = -1;
      if (best_ == 0) return;
    }
  }

  long row_bound(int i) const {
    const int w = sigma_[static_cast<std::size_t>(i)];
    return std::max<long>(mism_[static_cast<std::size_t>(i)],
                          std::abs(deg_a_[static_cast<std::size_t>(w)] -
                                   deg_b_[static_cast<std::size_t>(i)]));
  }

  // Unused vertices of a: i itself first, then by degree distance.
  std::vector<int> candidates(int i) const {
    std::vector<int> c;
    for (int w = 0; w < n_; ++w)
      if (!used_[static_cast<std::size_t>(w)]) c.push_back(w);
    const int di = deg_b_[static_cast<std::size_t>(i)];
    std::stable_sort(c.begin(), c.end(), [&](int x, int y) {
      if ((x == i) != (y == i)) return x == i;
      return std::abs(deg_a_[static_cast<std::size_t>(x)] - di) <
             std::abs(deg_a_[static_cast<std::size_t>(y)] - di);
    });
    return c;
  }

  const Graph::Adjacency& a_;
  const Graph::Adjacency& b_;
  int n_;
  std::vector<int> deg_a_, deg_b_, order_, sigma_, mism_;
  std::vector<bool> used_;
  long best_ = std::numeric_limits<long>::max();
  std::vector<int> best_sigma_;
};

}  // namespace

ExactMatch exact_match(const Graph& a, const Graph& b, int node_cap) {
  if (a.order() != b.order())
    throw std::invalid_argument("exact_match: graphs have different orders");
  if (a.order() > node_cap)
    throw std::invalid_argument("exact_match: n = " + std::to_string(a.order()) +
                                " exceeds the node cap " + std::to_string(node_cap));
  return BranchAndBound(a, b).run();
}

MatchReport relax_and_round(const Graph& a, const Graph& b, const MatchConfig& config) {
  const int n = a.order();
  if (b.order() != n) throw std::invalid_argument("relax_and_round: size mismatch");

  FWResult relaxed = frank_wolfe(a, b, barycenter(n), config.fw);
  // The minimizer for B = P A P^T is Q = P^T, so rounding yields sigma^-1.
  Permutation rounded = round_to_permutation(relaxed.q).inverse();
  const long rounded_objective = match_objective(a, b, rounded);

  MatchReport rep{std::nullopt, std::move(relaxed), rounded, rounded_objective,
                  std::nullopt, false, std::nullopt, {}};
  if (n <= config.exact_cap) {
    rep.exact = exact_match(a, b, config.exact_cap);
    rep.isomorphic = rep.exact->objective == 0;
  } else if (rounded_objective == 0) {
    rep.isomorphic = true;
  }
  if (!rep.relaxed.converged)
    rep.notes.push_back("Frank-Wolfe stopped at the iteration cap with gap " +
                        std::to_string(rep.relaxed.dual_gap));

  if (config.certify) {
    const SpectralDecomposition dec = eigendecompose(a);
    const Tolerances& tol = config.tol;
    if (has_simple_spectrum(dec, tol.eig)) {
      const SupportProfile prof = support_profile(dec, tol.orth_for(n), tol.supp);
      rep.certificate = certify_uniqueness_fast(dec, prof, tol.cert, tol.eig);
    } else {
      rep.certificate = certify_uniqueness_general(a.matrix<double>(), tol.cert);
      rep.notes.push_back("repeated spectrum: certificate is outside theorem scope");
    }
    rep.equivalent = rep.certificate->verdict == Verdict::unique;
  }

  if (rep.isomorphic == false) {
    rep.notes.push_back(
        "inputs are not isomorphic: the certificate describes only the commutant of A");
  } else if (!rep.isomorphic) {
    rep.notes.push_back("isomorphism undecided: n exceeds the exact-search cap and "
                        "rounding did not reach objective 0");
  }
  if (rep.isomorphic == true && rep.equivalent && rounded_objective != 0)
    rep.notes.push_back("inconsistency: certificate is unique but rounding missed an "
                        "isomorphism");
  return rep;
}

Prediction predict_equivalence(const SpectralClassification& c) {
  if (c.theorem_sorted) return Prediction::equivalent;
  if (c.regular && c.eigenvalues.size() > 1) return Prediction::not_equivalent;
  return Prediction::unknown;
}

}  // namespace gmrelax
