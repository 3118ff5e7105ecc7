//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <compare>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gmrelax/doubly_stochastic.hpp"

namespace gmrelax {

using Edge = std::pair<int, int>;

/// Undirected simple-or-looped graph stored as a symmetric 0/1 adjacency
/// matrix. Immutable after construction.
class Graph {
 public:
  using Adjacency = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

  /// Throws std::invalid_argument unless `adj` is square, non-empty,
  /// symmetric and 0/1 valued. Diagonal entries (loops) are allowed.
  explicit Graph(Adjacency adj);

  int order() const { return static_cast<int>(adj_.rows()); }
  const Adjacency& adjacency() const { return adj_; }

  template <typename Scalar = double>
  MatrixX<Scalar> matrix() const {
    return adj_.cast<Scalar>();
  }

  bool has_edge(int u, int v) const { return adj_(u, v) != 0; }
  int degree(int v) const { return adj_.row(v).sum(); }
  std::vector<int> degrees() const;

  /// Undirected edges (loops included) with u <= v, lexicographic order.
  std::vector<Edge> edges() const;
  int edge_count() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adj_.rows() == b.adj_.rows() && a.adj_ == b.adj_;
  }

 private:
  Adjacency adj_;
};

/// Vertex bijection. As a matrix, P[i][sigma(i)] = 1, so that
/// P_sigma * P_tau = P_(tau o sigma).
class Permutation {
 public:
  /// Throws std::invalid_argument unless `images` is a bijection of 0..n-1.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  /// Smallest m >= 1 with sigma^m = id.
  long order() const;
  /// Vertices with sigma(i) != i, ascending.
  std::vector<int> moved_points() const;

  template <typename Scalar = double>
  MatrixX<Scalar> matrix() const {
    MatrixX<Scalar> p = MatrixX<Scalar>::Zero(size(), size());
    for (int i = 0; i < size(); ++i) p(i, images_[i]) = Scalar(1);
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<int> images_;
};

/// (a o b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);

std::string to_string(const Permutation& sigma);

/// Builds a graph from undirected pairs. Rejects out-of-range indices and
/// duplicate undirected edges, naming the offending pair.
Graph from_edge_list(int n, const std::vector<Edge>& edges);

/// B = P A P^T, i.e. B[i][j] = A[sigma(i)][sigma(j)].
Graph apply_permutation(const Graph& g, const Permutation& sigma);

struct Regularity {
  bool regular = false;
  std::optional<int> degree;
};

Regularity is_regular(const Graph& g);

/// G(n, p) with a portable generator: std::mt19937_64 seeded with `seed`;
/// for each pair i < j in lexicographic order one 64-bit draw u is taken and
/// the edge is present iff (u >> 11) * 2^-53 < p. No loops.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

/// J = (1/n) 1 1^T.
DoublyStochasticMatrix barycenter(int n);

// Edge-list text format: "n m" on the first line followed by m lines "u v"
// with 0-based indices.

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::filesystem::path& path);
/// Canonical form: edges with u <= v in lexicographic order, LF endings.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);

/// FNV-1a 64 of the canonical edge-list text, as 16 hex digits.
std::string content_hash(const Graph& g);

}  // namespace gmrelax
