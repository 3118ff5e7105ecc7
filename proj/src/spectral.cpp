//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/spectral.hpp"

#include <algorithm>
#include <stdexcept>

#include "gmrelax/jacobi.hpp"

namespace gmrelax {

namespace {

double range_of(const Eigen::VectorXd& values) {
  if (values.size() == 0) return 0.0;
  return values(values.size() - 1) - values(0);
}

// Spreads the projection of 1 evenly over the basis of the eigenspace held
// in columns [first, first + m) using one Householder reflection.
void spread_ones_projection(Eigen::MatrixXd& u, Eigen::Index first,
                            Eigen::Index m, double ones_tol) {
  auto w = u.middleCols(first, m);
  const Eigen::VectorXd c = w.transpose() * Eigen::VectorXd::Ones(u.rows());
  const double cn = c.norm();
  if (cn <= ones_tol) return;
  const Eigen::VectorXd t =
      Eigen::VectorXd::Constant(m, cn / std::sqrt(static_cast<double>(m)));
  const Eigen::VectorXd h = c - t;
  const double hh = h.squaredNorm();
  if (hh <= 1e-30 * cn * cn) return;
  const Eigen::MatrixXd reflect =
      Eigen::MatrixXd::Identity(m, m) - (2.0 / hh) * h * h.transpose();
  w = (w * reflect).eval();
}

void fix_signs(Eigen::MatrixXd& u) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const double peak = u.col(j).cwiseAbs().maxCoeff();
    Eigen::Index lead = 0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      if (std::abs(u(i, j)) >= peak * (1.0 - 1e-9)) {
        lead = i;
        break;
      }
    }
    if (u(lead, j) < 0) u.col(j) *= -1.0;
  }
}

}  // namespace

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& a,
                                     const EigenOptions& options) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("eigendecompose: matrix must be square and non-empty");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("eigendecompose: matrix is not symmetric");

  const Eigen::Index n = a.rows();
  auto eig = jacobi_eigen(a);

  SpectralDecomposition dec;
  dec.eigenvalues = std::move(eig.values);
  dec.vectors = std::move(eig.vectors);
  dec.sweeps = eig.sweeps;

  const double scale = std::max(1.0, range_of(dec.eigenvalues));
  const double ones_tol =
      options.ones_tol ? *options.ones_tol : 1e-8 * std::sqrt(static_cast<double>(n));
  for (Eigen::Index first = 0; first < n;) {
    Eigen::Index last = first + 1;
    while (last < n && dec.eigenvalues(last) - dec.eigenvalues(last - 1) <=
                           options.cluster_tol * scale)
      ++last;
    if (last - first > 1) spread_ones_projection(dec.vectors, first, last - first, ones_tol);
    first = last;
  }
  fix_signs(dec.vectors);

  dec.ones_projection = dec.vectors.transpose() * Eigen::VectorXd::Ones(n);
  dec.residual = (a - dec.vectors * dec.eigenvalues.asDiagonal() *
                          dec.vectors.transpose())
                     .norm();
  return dec;
}

SpectralDecomposition eigendecompose(const Graph& g, const EigenOptions& options) {
  return eigendecompose(g.matrix<double>(), options);
}

std::vector<int> SupportProfile::sorted_supports() const {
  std::vector<int> s = supports;
  std::sort(s.begin(), s.end());
  return s;
}

SupportProfile support_profile(const SpectralDecomposition& dec, double orth_tol,
                               double supp_tol) {
  SupportProfile profile;
  const auto& v = dec.ones_projection;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (near_threshold(v(i), orth_tol)) profile.marginal = true;
    if (std::abs(v(i)) > orth_tol) continue;
    int support = 0;
    for (Eigen::Index j = 0; j < dec.vectors.rows(); ++j) {
      const double x = dec.vectors(j, i);
      if (near_threshold(x, supp_tol)) profile.marginal = true;
      if (std::abs(x) > supp_tol) ++support;
    }
    profile.ortho_indices.push_back(static_cast<int>(i));
    profile.supports.push_back(support);
  }
  profile.k = static_cast<int>(profile.ortho_indices.size());
  return profile;
}

double spectral_range(const SpectralDecomposition& dec) {
  return range_of(dec.eigenvalues);
}

double min_eigen_gap(const SpectralDecomposition& dec) {
  const auto& e = dec.eigenvalues;
  if (e.size() < 2) return std::numeric_limits<double>::infinity();
  return (e.tail(e.size() - 1) - e.head(e.size() - 1)).minCoeff();
}

bool has_simple_spectrum(const SpectralDecomposition& dec, double eig_tol) {
  return min_eigen_gap(dec) > eig_tol * std::max(1.0, spectral_range(dec));
}

bool spectrum_marginal(const SpectralDecomposition& dec, double eig_tol) {
  const auto& e = dec.eigenvalues;
  const double threshold = eig_tol * std::max(1.0, spectral_range(dec));
  for (Eigen::Index i = 1; i < e.size(); ++i)
    if (near_threshold(e(i) - e(i - 1), threshold)) return true;
  return false;
}

bool is_friendly(const SupportProfile& profile, bool simple) {
  return simple && profile.k == 0;
}

bool theorem_2k1_applies(const SupportProfile& profile, bool simple) {
  if (!simple) return false;
  const int need = 2 * profile.k + 1;
  return std::all_of(profile.supports.begin(), profile.supports.end(),
                     [need](int s) { return s >= need; });
}

bool theorem_sorted_applies(const SupportProfile& profile, bool simple) {
  if (!simple) return false;
  const auto s = profile.sorted_supports();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] < 2 * static_cast<int>(i + 1) + 1) return false;
  return true;
}

SpectralClassification classify(const Graph& g, const SpectralDecomposition& dec,
                                const Tolerances& tol) {
  SpectralClassification c;
  c.tolerances = tol;
  c.tolerances.orth = tol.orth_for(g.order());

  const auto profile = support_profile(dec, *c.tolerances.orth, tol.supp);
  const auto reg = is_regular(g);
  c.simple_spectrum = has_simple_spectrum(dec, tol.eig);
  c.regular = reg.regular;
  c.degree = reg.degree;
  c.k = profile.k;
  c.supports = profile.sorted_supports();
  c.friendly = is_friendly(profile, c.simple_spectrum);
  c.theorem_2k1 = theorem_2k1_applies(profile, c.simple_spectrum);
  c.theorem_sorted = theorem_sorted_applies(profile, c.simple_spectrum);
  c.marginal = profile.marginal || spectrum_marginal(dec, tol.eig);
  c.min_gap = min_eigen_gap(dec);
  c.eigenvalues = dec.eigenvalues;
  return c;
}

SpectralClassification classify(const Graph& g, const Tolerances& tol) {
  EigenOptions opts;
  opts.cluster_tol = tol.eig;
  opts.ones_tol = tol.orth_for(g.order());
  return classify(g, eigendecompose(g, opts), tol);
}

}  // namespace gmrelax
