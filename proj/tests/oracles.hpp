//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Brute-force reference implementations. Nothing here calls into the
// library beyond its value types, so a test that compares against these is
// comparing two independent computations.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gmrelax/graph.hpp"

namespace gmrelax::oracle {

/// Laplace expansion along the first row. Exponential; n <= 9 or so.
inline double cofactor_det(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  double det = 0.0;
  Eigen::MatrixXd minor(n - 1, n - 1);
  for (Eigen::Index c = 0; c < n; ++c) {
    if (m(0, c) == 0.0) continue;
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    det += ((c % 2) ? -1.0 : 1.0) * m(0, c) * cofactor_det(minor);
  }
  return det;
}

/// Calls f(images) for every permutation of 0..n-1 in lexicographic order.
template <typename F>
void for_each_permutation(int n, F&& f) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    f(static_cast<const std::vector<int>&>(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

/// Permutations sigma with A[i][j] == A[sigma(i)][sigma(j)], i.e. the
/// permutation matrices commuting with A.
inline std::vector<std::vector<int>> automorphisms(const Graph& g) {
  const auto& a = g.adjacency();
  const int n = g.order();
  std::vector<std::vector<int>> out;
  for_each_permutation(n, [&](const std::vector<int>& s) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (a(i, j) != a(s[i], s[j])) return;
    out.push_back(s);
  });
  return out;
}

/// Counts permutation matrices P with AP == PA by forming the products.
inline long commuting_permutation_count(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  long count = 0;
  for_each_permutation(n, [&](const std::vector<int>& s) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) p(i, s[i]) = 1.0;
    if ((a * p - p * a).cwiseAbs().maxCoeff() == 0.0) ++count;
  });
  return count;
}

struct BruteAssignment {
  std::vector<int> images;
  double cost = std::numeric_limits<double>::infinity();
};

inline BruteAssignment brute_force_assignment(const Eigen::MatrixXd& cost) {
  BruteAssignment best;
  for_each_permutation(static_cast<int>(cost.rows()), [&](const std::vector<int>& s) {
    double c = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) c += cost(static_cast<Eigen::Index>(i), s[i]);
    if (c < best.cost) best = {s, c};
  });
  return best;
}

/// min over sigma of sum_ij (A[s(i)][s(j)] - B[i][j])^2, plus the number of
/// minimizers.
struct BruteMatch {
  long objective = std::numeric_limits<long>::max();
  long minimizers = 0;
};

inline BruteMatch brute_force_match(const Graph& a, const Graph& b) {
  const auto& x = a.adjacency();
  const auto& y = b.adjacency();
  const int n = a.order();
  BruteMatch best;
  for_each_permutation(n, [&](const std::vector<int>& s) {
    long obj = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) obj += (x(s[i], s[j]) != y(i, j));
    if (obj < best.objective) {
      best.objective = obj;
      best.minimizers = 1;
    } else if (obj == best.objective) {
      ++best.minimizers;
    }
  });
  return best;
}

/// Gaussian elimination with partial pivoting; false if singular.
inline bool solve_dense(Eigen::MatrixXd m, Eigen::VectorXd rhs, Eigen::VectorXd& x) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (std::abs(m(piv, c)) < 1e-10) return false;
    m.row(c).swap(m.row(piv));
    std::swap(rhs(c), rhs(piv));
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      m.row(r) -= f * m.row(c);
      rhs(r) -= f * rhs(c);
    }
  }
  x.resize(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double s = rhs(r);
    for (Eigen::Index c = r + 1; c < n; ++c) s -= m(r, c) * x(c);
    x(r) = s / m(r, r);
  }
  return true;
}

/// max c^T x s.t. Ax = b, x >= 0 over every basic feasible solution. Needs
/// full row rank and a bounded feasible region. Returns -inf if infeasible.
inline double lp_vertex_enumeration(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                    const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<char> pick(static_cast<std::size_t>(n), 0);
  std::fill(pick.end() - m, pick.end(), 1);
  do {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (pick[static_cast<std::size_t>(j)]) cols.push_back(j);
    Eigen::MatrixXd basis(m, m);
    for (int k = 0; k < m; ++k) basis.col(k) = a.col(cols[static_cast<std::size_t>(k)]);
    Eigen::VectorXd xb;
    if (!solve_dense(basis, b, xb)) continue;
    if (xb.minCoeff() < -1e-9) continue;
    double v = 0.0;
    for (int k = 0; k < m; ++k) v += c(cols[static_cast<std::size_t>(k)]) * xb(k);
    best = std::max(best, v);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

/// Central differences of f at x, entry by entry.
template <typename F>
Eigen::MatrixXd finite_difference_gradient(F&& f, const Eigen::MatrixXd& x, double h = 1e-6) {
  Eigen::MatrixXd g(x.rows(), x.cols());
  Eigen::MatrixXd y = x;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double keep = y(i, j);
      y(i, j) = keep + h;
      const double up = f(y);
      y(i, j) = keep - h;
      const double down = f(y);
      y(i, j) = keep;
      g(i, j) = (up - down) / (2 * h);
    }
  return g;
}

// Hand-rolled generators for the property tests.

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  Graph::Adjacency adj = Graph::Adjacency::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) adj(i, j) = adj(j, i) = 1;
  return Graph(adj);
}

/// The graph whose upper-triangle edges are the bits of `code`, pairs (i, j)
/// with i < j in lexicographic order.
inline Graph graph_from_code(int n, std::uint64_t code) {
  Graph::Adjacency adj = Graph::Adjacency::Zero(n, n);
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if ((code >> bit) & 1U) adj(i, j) = adj(j, i) = 1;
  return Graph(adj);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

/// Sinkhorn-balanced random positive matrix: doubly stochastic to ~1e-14.
inline Eigen::MatrixXd random_doubly_stochastic(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  for (int it = 0; it < 2000; ++it) {
    m = (m.rowwise().sum().cwiseInverse()).asDiagonal() * m;
    m = m * (m.colwise().sum().cwiseInverse()).asDiagonal();
  }
  return m;
}

}  // namespace gmrelax::oracle
