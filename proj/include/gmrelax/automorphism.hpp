//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmrelax/graph.hpp"
#include "gmrelax/spectral.hpp"

namespace gmrelax {

struct AutomorphismGroup {
  std::vector<Permutation> elements;  // sorted, identity first
  bool trivial = true;
  bool truncated = false;

  long order() const { return static_cast<long>(elements.size()); }
};

constexpr int kMaxAutomorphismOrder = 20;

/// All automorphisms by backtracking over colour-refined vertex classes.
/// Throws std::invalid_argument for n > 20. Stops after `cap` elements and
/// sets `truncated`.
AutomorphismGroup automorphism_group(const Graph& g, int cap = 10000);

struct InvolutionCheck {
  bool holds = true;
  bool applicable = false;            // simple spectrum
  std::vector<Permutation> violations;  // elements with sigma^2 != id
  double min_gap = 0.0;
  std::string note;
};

/// With a simple spectrum every automorphism squares to the identity.
InvolutionCheck verify_involution_lemma(const Graph& g, const Tolerances& tol = {});
InvolutionCheck verify_involution_lemma(const Graph& g, const SpectralDecomposition& dec,
                                        const AutomorphismGroup& group,
                                        const Tolerances& tol = {});

enum class TwinCase {
  adjacent_no_loops,       // lambda = -1
  nonadjacent_no_loops,    // lambda = 0
  adjacent_both_loops,     // lambda = 0
  nonadjacent_both_loops,  // lambda = +1
};

constexpr std::string_view to_string(TwinCase c) {
  switch (c) {
    case TwinCase::adjacent_no_loops: return "adjacent_no_loops";
    case TwinCase::nonadjacent_no_loops: return "nonadjacent_no_loops";
    case TwinCase::adjacent_both_loops: return "adjacent_both_loops";
    case TwinCase::nonadjacent_both_loops: break;
  }
  return "nonadjacent_both_loops";
}

struct TwinPair {
  int s = 0, t = 0;  // s < t
  int lambda = 0;
  TwinCase twin_case = TwinCase::nonadjacent_no_loops;
  /// Eigenvector column, or -1 when found inside a repeated eigenspace.
  int eigen_index = -1;
  /// Columns agree off {s, t}, (s t) is an automorphism and lambda matches
  /// the adjacency case.
  bool consistent = false;
};

struct TwinReport {
  std::vector<TwinPair> pairs;
  std::vector<std::string> diagnostics;
};

/// Twins are read off eigenvectors (e_s - e_t)/sqrt(2): for simple
/// eigenvalues from the eigenvectors orthogonal to 1 with support 2, and for
/// repeated eigenvalues by testing whether (e_s - e_t)/sqrt(2) lies in the
/// eigenspace (the stored basis of such a space need not contain it).
/// Every candidate is then checked against the adjacency matrix; failures
/// stay in the report with consistent = false and a diagnostic.
TwinReport detect_twin_pairs(const Graph& g, const SpectralDecomposition& dec,
                             const Tolerances& tol = {});

struct Proposition1Check {
  bool holds = true;
  bool vacuous = true;  // trivial group or repeated spectrum
  std::optional<int> k;  // smallest k with k vectors of support <= 2k
  std::vector<int> witness_indices;  // eigenvector columns
  /// Witness vectors with an odd support (a statistic, not a failure).
  std::vector<int> odd_support_indices;
};

/// A nontrivial group forces, for some k >= 1, at least k eigenvectors
/// orthogonal to 1 with at most 2k nonzeros each. Tested through the sorted
/// supports, which decides the existential exactly.
Proposition1Check verify_proposition1(const SpectralDecomposition& dec,
                                      const SupportProfile& profile,
                                      const AutomorphismGroup& group,
                                      const Tolerances& tol = {});

struct ConjectureFinding {
  std::vector<int> support;  // vertex set, ascending
  std::vector<int> vectors;  // eigenvector columns with exactly this support
  bool matches = false;      // |S| even and at least |S|/2 vectors
  std::optional<bool> automorphism_confirmed;
  /// Some automorphism moves exactly the vertices of S.
  std::optional<bool> moved_set_matches;
  bool marginal = false;  // an entry of a listed vector is near supp

  bool counterexample() const { return matches && automorphism_confirmed == false; }
};

/// Groups the eigenvectors orthogonal to 1 by support set. Empty for a
/// repeated spectrum. With `confirm` and n <= 20 the automorphism group is
/// computed to confirm each matching finding.
std::vector<ConjectureFinding> conjecture_scan(const Graph& g,
                                               const SpectralDecomposition& dec,
                                               const SupportProfile& profile,
                                               bool confirm,
                                               const Tolerances& tol = {});

/// As above, reusing a computed group.
std::vector<ConjectureFinding> conjecture_scan(const Graph& g,
                                               const SpectralDecomposition& dec,
                                               const SupportProfile& profile,
                                               const AutomorphismGroup* group,
                                               const Tolerances& tol = {});

}  // namespace gmrelax
