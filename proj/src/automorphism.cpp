//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

namespace gmrelax {

namespace {

// 1-dimensional Weisfeiler-Leman refinement; automorphisms preserve colours.
std::vector<int> refine_colours(const Graph& g) {
  const int n = g.order();
  const auto& adj = g.adjacency();
  std::vector<int> colour(static_cast<std::size_t>(n));
  {
    std::map<std::pair<int, int>, int> ids;
    for (int v = 0; v < n; ++v)
      ids.emplace(std::pair{g.degree(v), adj(v, v)}, 0);
    int next = 0;
    for (auto& [key, id] : ids) id = next++;
    for (int v = 0; v < n; ++v)
      colour[static_cast<std::size_t>(v)] = ids.at({g.degree(v), adj(v, v)});
  }
  for (std::size_t classes = 0;;) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto& s = sig[static_cast<std::size_t>(v)];
      s.first = colour[static_cast<std::size_t>(v)];
      for (int w = 0; w < n; ++w)
        if (adj(v, w) && w != v) s.second.push_back(colour[static_cast<std::size_t>(w)]);
      std::sort(s.second.begin(), s.second.end());
      ids.emplace(s, 0);
    }
    int next = 0;
    for (auto& [key, id] : ids) id = next++;
    for (int v = 0; v < n; ++v)
      colour[static_cast<std::size_t>(v)] = ids.at(sig[static_cast<std::size_t>(v)]);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return colour;
}

class Search {
 public:
  Search(const Graph& g, int cap)
      : adj_(g.adjacency()), n_(g.order()), cap_(cap), colour_(refine_colours(g)) {
    // Place next the vertex with most placed neighbours, then the smallest
    // colour class, so adjacency constraints bite early.
    std::vector<int> class_size(static_cast<std::size_t>(n_), 0);
    for (int c : colour_) ++class_size[static_cast<std::size_t>(c)];
    std::vector<bool> placed(static_cast<std::size_t>(n_), false);
    std::vector<int> links(static_cast<std::size_t>(n_), 0);
    for (int step = 0; step < n_; ++step) {
      int best = -1;
      for (int v = 0; v < n_; ++v) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        if (best < 0) {
          best = v;
          continue;
        }
        const auto key = [&](int x) {
          return std::pair{-links[static_cast<std::size_t>(x)],
                           class_size[static_cast<std::size_t>(colour_[static_cast<std::size_t>(x)])]};
        };
        if (key(v) < key(best)) best = v;
      }
      placed[static_cast<std::size_t>(best)] = true;
      order_.push_back(best);
      for (int w = 0; w < n_; ++w)
        if (adj_(best, w)) ++links[static_cast<std::size_t>(w)];
    }
    image_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), false);
  }

  AutomorphismGroup run() {
    AutomorphismGroup group;
    search(0, group);
    std::sort(group.elements.begin(), group.elements.end());
    group.trivial = group.elements.size() == 1;
    return group;
  }

 private:
  bool search(int depth, AutomorphismGroup& group) {
    if (depth == n_) {
      group.elements.emplace_back(image_);
      if (static_cast<int>(group.elements.size()) >= cap_) {
        group.truncated = true;
        return false;
      }
      return true;
    }
    const int v = order_[static_cast<std::size_t>(depth)];
    for (int w = 0; w < n_; ++w) {
      if (used_[static_cast<std::size_t>(w)] ||
          colour_[static_cast<std::size_t>(w)] != colour_[static_cast<std::size_t>(v)] ||
          adj_(v, v) != adj_(w, w))
        continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        const int u = order_[static_cast<std::size_t>(d)];
        ok = adj_(v, u) == adj_(w, image_[static_cast<std::size_t>(u)]);
      }
      if (!ok) continue;
      image_[static_cast<std::size_t>(v)] = w;
      used_[static_cast<std::size_t>(w)] = true;
      const bool more = search(depth + 1, group);
      used_[static_cast<std::size_t>(w)] = false;
      image_[static_cast<std::size_t>(v)] = -1;
      if (!more) return false;
    }
    return true;
  }

  const Graph::Adjacency& adj_;
  int n_;
  int cap_;
  std::vector<int> colour_, order_, image_;
  std::vector<bool> used_;
};

// Index ranges [first, last) of eigenvalues closer than the simplicity
// threshold.
std::vector<std::pair<int, int>> clusters(const SpectralDecomposition& dec, double eig_tol) {
  const double thr = eig_tol * std::max(1.0, spectral_range(dec));
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(dec.eigenvalues.size());
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && dec.eigenvalues(j) - dec.eigenvalues(j - 1) <= thr) ++j;
    out.emplace_back(i, j);
    i = j;
  }
  return out;
}

std::vector<int> support_of(const Eigen::VectorXd& u, double supp) {
  std::vector<int> s;
  for (Eigen::Index j = 0; j < u.size(); ++j)
    if (std::abs(u(j)) > supp) s.push_back(static_cast<int>(j));
  return s;
}

}  // namespace

AutomorphismGroup automorphism_group(const Graph& g, int cap) {
  if (g.order() > kMaxAutomorphismOrder)
    throw std::invalid_argument("automorphism_group: n = " + std::to_string(g.order()) +
                                " exceeds the backtracking bound of " +
                                std::to_string(kMaxAutomorphismOrder));
  if (cap < 1) throw std::invalid_argument("automorphism_group: cap must be positive");
  return Search(g, cap).run();
}

InvolutionCheck verify_involution_lemma(const Graph& g, const Tolerances& tol) {
  return verify_involution_lemma(g, eigendecompose(g), automorphism_group(g), tol);
}

InvolutionCheck verify_involution_lemma(const Graph&, const SpectralDecomposition& dec,
                                        const AutomorphismGroup& group,
                                        const Tolerances& tol) {
  InvolutionCheck out;
  out.min_gap = min_eigen_gap(dec);
  out.applicable = has_simple_spectrum(dec, tol.eig);
  if (!out.applicable) {
    out.note = "not applicable: repeated eigenvalues";
    return out;
  }
  for (const auto& sigma : group.elements)
    if (!compose(sigma, sigma).is_identity()) out.violations.push_back(sigma);
  out.holds = out.violations.empty();
  if (!out.holds) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu automorphisms are not involutions despite a simple spectrum "
                  "(min eigenvalue gap %.3e)",
                  out.violations.size(), out.min_gap);
    out.note = buf;
  }
  return out;
}

TwinReport detect_twin_pairs(const Graph& g, const SpectralDecomposition& dec,
                             const Tolerances& tol) {
  const int n = g.order();
  const auto& adj = g.adjacency();
  const double orth = tol.orth_for(n);
  const double r2 = 1.0 / std::sqrt(2.0);
  TwinReport rep;
  std::set<std::pair<int, int>> seen;

  const auto add = [&](int s, int t, double lambda, int index) {
    if (!seen.emplace(s, t).second) return;
    TwinPair p;
    p.s = s;
    p.t = t;
    p.eigen_index = index;
    const bool adjacent = adj(s, t) != 0;
    const bool loops = adj(s, s) != 0 && adj(t, t) != 0;
    const bool mixed_loops = adj(s, s) != adj(t, t);
    p.twin_case = adjacent ? (loops ? TwinCase::adjacent_both_loops : TwinCase::adjacent_no_loops)
                           : (loops ? TwinCase::nonadjacent_both_loops
                                    : TwinCase::nonadjacent_no_loops);
    const int expected = adj(s, s) - adj(s, t);
    const double rounded = std::round(lambda);
    p.lambda = static_cast<int>(rounded);
    bool ok = true;
    char buf[200];
    if (std::abs(lambda - rounded) > 1e-6 || std::abs(rounded) > 1.0) {
      std::snprintf(buf, sizeof buf,
                    "pair (%d,%d): eigenvalue %.12g is not within 1e-6 of -1, 0 or 1", s, t,
                    lambda);
      rep.diagnostics.emplace_back(buf);
      ok = false;
    } else if (mixed_loops || p.lambda != expected) {
      std::snprintf(buf, sizeof buf,
                    "pair (%d,%d): eigenvalue %d disagrees with the adjacency case %s", s, t,
                    p.lambda, std::string(to_string(p.twin_case)).c_str());
      rep.diagnostics.emplace_back(buf);
      ok = false;
    }
    bool same = true;
    for (int r = 0; r < n; ++r)
      if (r != s && r != t && adj(r, s) != adj(r, t)) same = false;
    if (!same) {
      std::snprintf(buf, sizeof buf, "pair (%d,%d): columns differ outside {s,t}", s, t);
      rep.diagnostics.emplace_back(buf);
      ok = false;
    }
    if (apply_permutation(g, Permutation::transposition(n, s, t)) != g) {
      std::snprintf(buf, sizeof buf, "pair (%d,%d): transposition is not an automorphism", s, t);
      rep.diagnostics.emplace_back(buf);
      ok = false;
    }
    p.consistent = ok;
    rep.pairs.push_back(p);
  };

  for (const auto& [first, last] : clusters(dec, tol.eig)) {
    if (last - first == 1) {
      const Eigen::VectorXd u = dec.vectors.col(first);
      if (std::abs(dec.ones_projection(first)) > orth) continue;
      const auto s = support_of(u, tol.supp);
      if (s.size() != 2) continue;
      if (std::abs(std::abs(u(s[0])) - r2) > 1e-6 || std::abs(std::abs(u(s[1])) - r2) > 1e-6 ||
          u(s[0]) * u(s[1]) > 0) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "eigenvector %d has support {%d,%d} but entries %.9g, %.9g are not "
                      "+-1/sqrt(2) with opposite signs",
                      first, s[0], s[1], u(s[0]), u(s[1]));
        rep.diagnostics.emplace_back(buf);
        continue;
      }
      add(s[0], s[1], dec.eigenvalues(first), first);
    } else {
      const Eigen::MatrixXd basis = dec.vectors.middleCols(first, last - first);
      const double lambda = dec.eigenvalues.segment(first, last - first).mean();
      for (int s = 0; s < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
          Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
          w(s) = r2;
          w(t) = -r2;
          if ((w - basis * (basis.transpose() * w)).norm() <= 1e-6) add(s, t, lambda, -1);
        }
      }
    }
  }
  std::sort(rep.pairs.begin(), rep.pairs.end(),
            [](const TwinPair& a, const TwinPair& b) { return std::pair{a.s, a.t} < std::pair{b.s, b.t}; });
  return rep;
}

Proposition1Check verify_proposition1(const SpectralDecomposition& dec,
                                      const SupportProfile& profile,
                                      const AutomorphismGroup& group,
                                      const Tolerances& tol) {
  Proposition1Check out;
  if (group.trivial || !has_simple_spectrum(dec, tol.eig)) return out;
  out.vacuous = false;

  std::vector<std::size_t> idx(profile.supports.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return profile.supports[a] < profile.supports[b];
  });
  for (std::size_t k = 1; k <= idx.size(); ++k) {
    if (profile.supports[idx[k - 1]] <= 2 * static_cast<int>(k)) {
      out.k = static_cast<int>(k);
      for (std::size_t i = 0; i < k; ++i) {
        const int col = profile.ortho_indices[idx[i]];
        out.witness_indices.push_back(col);
        if (profile.supports[idx[i]] % 2 != 0) out.odd_support_indices.push_back(col);
      }
      break;
    }
  }
  out.holds = out.k.has_value();
  return out;
}

std::vector<ConjectureFinding> conjecture_scan(const Graph& g,
                                               const SpectralDecomposition& dec,
                                               const SupportProfile& profile,
                                               bool confirm, const Tolerances& tol) {
  if (confirm && g.order() <= kMaxAutomorphismOrder) {
    const AutomorphismGroup group = automorphism_group(g);
    return conjecture_scan(g, dec, profile, &group, tol);
  }
  return conjecture_scan(g, dec, profile, nullptr, tol);
}

std::vector<ConjectureFinding> conjecture_scan(const Graph&, const SpectralDecomposition& dec,
                                               const SupportProfile& profile,
                                               const AutomorphismGroup* group,
                                               const Tolerances& tol) {
  std::vector<ConjectureFinding> out;
  if (!has_simple_spectrum(dec, tol.eig)) return out;
  std::map<std::vector<int>, std::size_t> by_support;
  for (int col : profile.ortho_indices) {
    const Eigen::VectorXd u = dec.vectors.col(col);
    auto s = support_of(u, tol.supp);
    auto [it, fresh] = by_support.emplace(s, out.size());
    if (fresh) {
      out.emplace_back();
      out.back().support = std::move(s);
    }
    auto& f = out[it->second];
    f.vectors.push_back(col);
    for (Eigen::Index j = 0; j < u.size(); ++j)
      if (near_threshold(u(j), tol.supp)) f.marginal = true;
  }
  for (auto& f : out) {
    const std::size_t size = f.support.size();
    f.matches = size % 2 == 0 && size > 0 && f.vectors.size() >= size / 2;
    if (!group) continue;
    f.automorphism_confirmed = !group->trivial;
    bool moved = false;
    for (const auto& sigma : group->elements)
      if (sigma.moved_points() == f.support) moved = true;
    f.moved_set_matches = moved;
  }
  std::sort(out.begin(), out.end(), [](const ConjectureFinding& a, const ConjectureFinding& b) {
    return a.support < b.support;
  });
  return out;
}

}  // namespace gmrelax
