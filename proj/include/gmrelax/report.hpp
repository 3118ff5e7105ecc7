//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gmrelax/automorphism.hpp"
#include "gmrelax/equivalence.hpp"
#include "gmrelax/graph.hpp"
#include "gmrelax/labels.hpp"
#include "gmrelax/spectral.hpp"

namespace gmrelax {

inline constexpr const char* kAnalysisSchema = "gmrelax.analysis/1";

struct CertificateSummary {
  CertificateMethod method = CertificateMethod::general_lp;
  Verdict verdict = Verdict::unique;
  double lp_optimum = 0.0;
  bool marginal = false;
  int pivots = 0;
  /// False for repeated spectra, where no theorem covers the verdict.
  bool in_theorem_scope = true;
};

struct GroupSummary {
  long order = 1;
  bool trivial = true;
  bool truncated = false;
  std::vector<Permutation> elements;  // first kListedElements only
  bool involution_applicable = false;
  bool involution_holds = true;
  bool proposition1_vacuous = true;
  bool proposition1_holds = true;
  std::optional<int> proposition1_k;
  std::vector<int> proposition1_witness;
  std::vector<int> proposition1_odd_supports;
};

struct Timings {
  double spectral_ms = 0, certificate_ms = 0, automorphism_ms = 0;
};

struct AnalysisReport {
  std::string name;
  std::string source;  // "corpus", a file path, or "generated"
  std::string hash;
  int n = 0;
  int edges = 0;
  SpectralClassification spectral;
  std::optional<CertificateSummary> certificate;
  std::optional<GroupSummary> group;  // unset above the backtracking bound
  std::vector<TwinPair> twins;
  std::vector<ConjectureFinding> conjecture;
  Zone zone = Zone::unresolved;
  Prediction prediction = Prediction::unknown;
  std::vector<std::string> notes;
  std::optional<Timings> timings;
};

inline constexpr std::size_t kListedElements = 64;

struct AnalysisOptions {
  Tolerances tol;
  bool certificate = true;
  bool automorphisms = true;
  bool timings = false;
  int group_cap = 10000;
};

/// Zone from computed flags. Precedence: REGULAR_RED, NONSIMPLE, FRIENDLY,
/// THEOREM_GREEN, SYMMETRIC, ZONE2_CANDIDATE, UNRESOLVED. The asymmetric
/// zone-2 label needs a known trivial group and a computed certificate.
Zone assign_zone(const SpectralClassification& c, std::optional<bool> trivial_group,
                 bool certificate_computed);

AnalysisReport analyze(const Graph& g, const std::string& name, const std::string& source,
                       const AnalysisOptions& options = {});

// Serialization. Keys are sorted and floats carry 12 significant digits, so
// equal reports produce identical bytes.
double round_sig(double x);
nlohmann::json to_json(const AnalysisReport& r);
AnalysisReport analysis_from_json(const nlohmann::json& j);
std::string serialize(const AnalysisReport& r);  // pretty JSON + newline

nlohmann::json to_json(const UniquenessCertificate& c, bool with_witness);

/// Flat (key, value) pairs shared by the CSV and text renderings.
std::vector<std::pair<std::string, std::string>> flatten(const AnalysisReport& r);
std::string to_csv(const std::vector<AnalysisReport>& reports);
std::string to_text(const AnalysisReport& r);

/// RFC 4180 quoting when needed.
std::string csv_field(const std::string& s);

}  // namespace gmrelax
