//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/corpus.hpp"

#include <algorithm>
#include <stdexcept>

namespace gmrelax {

namespace {

CorpusEntry frucht() {
  ExpectedProperties e;
  e.regular = true;
  e.degree = 3;
  e.simple_spectrum = true;
  e.trivial_group = true;
  e.group_order = 1;
  e.ortho_count = 11;
  e.certificate = Verdict::non_unique;
  e.zone = Zone::regular_red;
  return {"frucht",
          from_edge_list(12, {{0, 11}, {0, 1}, {0, 2}, {1, 2}, {1, 6}, {6, 7},
                              {5, 6}, {5, 7}, {7, 9}, {9, 10}, {8, 9}, {8, 10},
                              {10, 11}, {2, 3}, {3, 4}, {4, 5}, {4, 8}, {3, 11}}),
          e};
}

// 4-regular, asymmetric, repeated eigenvalue 0.
CorpusEntry regular10() {
  ExpectedProperties e;
  e.regular = true;
  e.degree = 4;
  e.simple_spectrum = false;
  e.trivial_group = true;
  e.group_order = 1;
  e.ortho_count = 9;
  e.certificate = Verdict::non_unique;
  e.zone = Zone::regular_red;
  return {"regular10",
          from_edge_list(10, {{0, 3}, {3, 4}, {4, 2}, {2, 8}, {8, 1}, {1, 7},
                              {7, 9}, {9, 6}, {6, 5}, {5, 0}, {0, 4}, {4, 7},
                              {7, 6}, {6, 2}, {2, 5}, {5, 1}, {1, 9}, {9, 3},
                              {3, 8}, {8, 0}}),
          e};
}

CorpusEntry fig3() {
  ExpectedProperties e;
  e.regular = false;
  e.simple_spectrum = true;
  e.trivial_group = true;
  e.group_order = 1;
  e.ortho_count = 1;
  e.supports = std::vector<int>{4};
  e.certificate = Verdict::unique;
  e.zone = Zone::theorem_green;
  return {"fig3",
          from_edge_list(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1},
                             {1, 4}, {4, 6}, {6, 3}, {6, 1}}),
          e};
}

CorpusEntry fig4() {
  ExpectedProperties e;
  e.regular = false;
  e.simple_spectrum = true;
  e.trivial_group = false;
  e.group_order = 2;
  e.ortho_count = 2;
  e.supports = std::vector<int>{4, 4};
  e.certificate = Verdict::non_unique;
  e.zone = Zone::symmetric;
  e.conjecture_confirmed = true;
  return {"fig4",
          from_edge_list(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0},
                             {0, 6}, {6, 7}, {5, 6}, {6, 1}, {3, 6}}),
          e};
}

CorpusEntry fig5_left() {
  ExpectedProperties e;
  e.simple_spectrum = false;
  e.trivial_group = true;
  e.group_order = 1;
  e.ortho_count = 1;
  e.zone = Zone::nonsimple;
  return {"fig5_left",
          from_edge_list(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6},
                             {6, 7}, {7, 1}, {4, 7}}),
          e};
}

CorpusEntry fig5_right() {
  ExpectedProperties e;
  e.simple_spectrum = false;
  e.trivial_group = true;
  e.group_order = 1;
  e.ortho_count = 0;
  e.zone = Zone::nonsimple;
  return {"fig5_right",
          from_edge_list(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 7}, {7, 3},
                             {3, 5}, {5, 6}, {5, 7}}),
          e};
}

// Triangle with a pendant vertex: smallest twin pair with lambda = -1.
CorpusEntry paw() {
  ExpectedProperties e;
  e.regular = false;
  e.simple_spectrum = true;
  e.trivial_group = false;
  e.group_order = 2;
  e.ortho_count = 1;
  e.supports = std::vector<int>{2};
  e.certificate = Verdict::non_unique;
  e.zone = Zone::symmetric;
  e.conjecture_confirmed = true;
  return {"paw", from_edge_list(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}}), e};
}

}  // namespace

const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {
      "frucht", "regular10", "fig3", "fig4", "fig5_left", "fig5_right", "paw"};
  return names;
}

bool is_corpus_name(const std::string& name) {
  const auto& names = corpus_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CorpusEntry corpus(const std::string& name) {
  if (name == "frucht") return frucht();
  if (name == "regular10") return regular10();
  if (name == "fig3") return fig3();
  if (name == "fig4") return fig4();
  if (name == "fig5_left") return fig5_left();
  if (name == "fig5_right") return fig5_right();
  if (name == "paw") return paw();
  throw std::invalid_argument("unknown corpus graph: " + name);
}

}  // namespace gmrelax
