//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmrelax/graph.hpp"
#include "gmrelax/labels.hpp"

namespace gmrelax {

/// Claimed properties of a corpus graph. Unset fields carry no claim.
struct ExpectedProperties {
  std::optional<bool> regular;
  std::optional<int> degree;
  std::optional<bool> simple_spectrum;
  std::optional<bool> trivial_group;
  std::optional<long> group_order;
  /// Number of eigenvectors orthogonal to the all-ones vector.
  std::optional<int> ortho_count;
  /// Their support sizes, ascending.
  std::optional<std::vector<int>> supports;
  std::optional<Verdict> certificate;
  std::optional<Zone> zone;
  /// A Conjecture-1 style finding exists and is backed by an automorphism.
  std::optional<bool> conjecture_confirmed;
};

struct CorpusEntry {
  std::string name;
  Graph graph;
  ExpectedProperties expected;
};

/// Names in corpus order.
const std::vector<std::string>& corpus_names();

/// Throws std::invalid_argument for unknown names.
CorpusEntry corpus(const std::string& name);

bool is_corpus_name(const std::string& name);

}  // namespace gmrelax
