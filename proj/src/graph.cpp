//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace gmrelax {

Graph::Graph(Adjacency adj) : adj_(std::move(adj)) {
  if (adj_.rows() == 0 || adj_.rows() != adj_.cols())
    throw std::invalid_argument("adjacency matrix must be square and non-empty");
  for (Eigen::Index i = 0; i < adj_.rows(); ++i) {
    for (Eigen::Index j = 0; j < adj_.cols(); ++j) {
      const int a = adj_(i, j);
      if (a != 0 && a != 1)
        throw std::invalid_argument("adjacency entries must be 0 or 1");
      if (a != adj_(j, i))
        throw std::invalid_argument("adjacency matrix is not symmetric");
    }
  }
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(order()));
  for (int v = 0; v < order(); ++v) d[static_cast<std::size_t>(v)] = degree(v);
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < order(); ++u)
    for (int v = u; v < order(); ++v)
      if (adj_(u, v)) out.emplace_back(u, v);
  return out;
}

int Graph::edge_count() const { return static_cast<int>(edges().size()); }

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  const int n = size();
  for (int x : images_) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("not a permutation of 0..n-1");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Permutation Permutation::transposition(int n, int a, int b) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  std::swap(m.at(static_cast<std::size_t>(a)), m.at(static_cast<std::size_t>(b)));
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(images_[i])] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

long Permutation::order() const {
  long result = 1;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    long len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = images_[j]) {
      seen[static_cast<std::size_t>(j)] = 1;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::vector<int> Permutation::moved_points() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (images_[static_cast<std::size_t>(i)] != i) out.push_back(i);
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("compose: permutation sizes differ");
  std::vector<int> m(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) m[static_cast<std::size_t>(i)] = a(b(i));
  return Permutation(std::move(m));
}

std::string to_string(const Permutation& sigma) {
  std::string s = "[";
  for (int i = 0; i < sigma.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(sigma(i));
  }
  return s + "]";
}

Graph from_edge_list(int n, const std::vector<Edge>& edges) {
  if (n <= 0) throw std::invalid_argument("vertex count must be positive");
  Graph::Adjacency adj = Graph::Adjacency::Zero(n, n);
  for (const auto& [u, v] : edges) {
    const std::string pair =
        "(" + std::to_string(u) + "," + std::to_string(v) + ")";
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge " + pair + " out of range");
    if (adj(u, v)) throw std::invalid_argument("duplicate edge " + pair);
    adj(u, v) = adj(v, u) = 1;
  }
  return Graph(std::move(adj));
}

Graph apply_permutation(const Graph& g, const Permutation& sigma) {
  const int n = g.order();
  if (sigma.size() != n)
    throw std::invalid_argument("permutation size does not match graph");
  Graph::Adjacency b(n, n);
  const auto& a = g.adjacency();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = a(sigma(i), sigma(j));
  return Graph(std::move(b));
}

Regularity is_regular(const Graph& g) {
  const auto d = g.degrees();
  if (std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) != d.end())
    return {};
  return {true, d.front()};
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  if (n <= 0) throw std::invalid_argument("vertex count must be positive");
  std::mt19937_64 gen(seed);
  Graph::Adjacency adj = Graph::Adjacency::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      if (u < p) adj(i, j) = adj(j, i) = 1;
    }
  }
  return Graph(std::move(adj));
}

DoublyStochasticMatrix barycenter(int n) {
  if (n < 1) throw std::invalid_argument("barycenter needs n >= 1");
  return DoublyStochasticMatrix(
      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n)));
}

namespace {

bool parse_ints(const std::string& line, std::vector<long>& out) {
  std::istringstream ss(line);
  out.clear();
  long x = 0;
  while (ss >> x) out.push_back(x);
  return ss.eof();
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::vector<long> vals;
  int lineno = 0;

  if (!std::getline(in, line)) throw ParseError(1, "missing header \"n m\"");
  ++lineno;
  if (!parse_ints(line, vals) || vals.size() != 2)
    throw ParseError(lineno, "expected header \"n m\"");
  const long n = vals[0];
  const long m = vals[1];
  if (n <= 0 || n > 100000) throw ParseError(lineno, "vertex count out of range");
  if (m < 0 || m > n * (n + 1) / 2) throw ParseError(lineno, "edge count out of range");

  Graph::Adjacency adj = Graph::Adjacency::Zero(n, n);
  for (long e = 0; e < m; ++e) {
    if (!std::getline(in, line))
      throw ParseError(lineno + 1, "expected " + std::to_string(m) +
                                       " edges, found " + std::to_string(e));
    ++lineno;
    if (!parse_ints(line, vals) || vals.size() != 2)
      throw ParseError(lineno, "expected edge \"u v\"");
    const long u = vals[0];
    const long v = vals[1];
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError(lineno, "vertex index out of range");
    if (adj(u, v)) throw ParseError(lineno, "duplicate edge");
    adj(u, v) = adj(v, u) = 1;
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank(line)) throw ParseError(lineno, "unexpected content after edges");
  }
  return Graph(std::move(adj));
}

Graph read_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << to_edge_list(g);
}

std::string to_edge_list(const Graph& g) {
  const auto edges = g.edges();
  std::string s = std::to_string(g.order()) + " " + std::to_string(edges.size()) + "\n";
  for (const auto& [u, v] : edges)
    s += std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

std::string content_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_edge_list(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gmrelax
