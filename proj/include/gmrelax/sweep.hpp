//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gmrelax/labels.hpp"
#include "gmrelax/spectral.hpp"

namespace gmrelax {

struct SweepConfig {
  int n_min = 8;
  int n_max = 8;
  double p = 0.5;
  int count = 10000;  // graphs per order
  std::uint64_t seed = 42;
  int workers = 1;
  /// Also run the general LP on simple-spectrum graphs and compare.
  bool cross_check = true;
  /// Where ZONE2_CANDIDATE graphs are written as edge lists; unset skips.
  std::optional<std::filesystem::path> archive_dir;
  Tolerances tol;
};

// Anomaly flags. The first three are theorem-backed and expected never to
// fire; zone2_candidate is a finding, not an error.
namespace anomaly {
inline constexpr const char* conjecture_counterexample = "conjecture_counterexample";
inline constexpr const char* proposition1_violation = "proposition1_violation";
inline constexpr const char* theorem_soundness = "theorem_soundness";
inline constexpr const char* zone2_candidate = "zone2_candidate";
inline constexpr const char* involution_violation = "involution_violation";
inline constexpr const char* certificate_disagreement = "certificate_disagreement";
inline constexpr const char* necessity_violation = "necessity_violation";
inline constexpr const char* corollary_violation = "corollary_violation";
inline constexpr const char* twin_inconsistency = "twin_inconsistency";
inline constexpr const char* analysis_error = "analysis_error";
}  // namespace anomaly

struct SweepRecord {
  long index = 0;  // position in the sweep
  std::uint64_t seed = 0;  // erdos_renyi(n, p, seed) regenerates the graph
  int n = 0;
  double p = 0.0;
  std::string hash;
  int edges = 0;
  bool simple_spectrum = false, friendly = false, regular = false;
  int k = 0;
  std::vector<int> supports;
  bool theorem_2k1 = false, theorem_sorted = false, marginal = false;
  std::string certificate_method;
  std::string verdict;
  double lp_optimum = 0.0;
  std::string general_verdict;  // empty unless cross-checked
  std::optional<double> general_optimum;
  long group_order = 0;
  bool group_truncated = false;
  bool involution_holds = true;
  bool proposition1_holds = true;
  std::optional<int> proposition1_k;
  int conjecture_findings = 0;
  int conjecture_matches = 0;
  int twin_pairs = 0;
  Zone zone = Zone::unresolved;
  std::vector<std::string> anomalies;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // in index order
  std::map<std::string, long> anomaly_counts;
  std::map<std::string, long> zone_counts;
  long simple_spectrum = 0;
  long cross_checked = 0;
  double max_optimum_difference = 0.0;  // fast vs general
  std::vector<std::filesystem::path> archived;
};

/// Deterministic per-item seed from (sweep seed, n, index) via splitmix64.
std::uint64_t item_seed(std::uint64_t seed, int n, long index);

SweepRecord analyze_item(long index, int n, double p, std::uint64_t seed, const SweepConfig& config);

/// Runs the sweep on `workers` threads. Output order and content do not
/// depend on the worker count.
SweepResult run_sweep(const SweepConfig& config);

/// One header line and one line per record; columns are documented in
/// docs/sweep_csv.md and in the CLI help.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
extern const char* const kSweepCsvColumns;

void write_sweep_summary(std::ostream& out, const SweepConfig& config, const SweepResult& result);

/// Theorem-backed categories that must stay at zero.
long hard_anomalies(const SweepResult& result);

}  // namespace gmrelax
