//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gmrelax/corpus.hpp"
#include "gmrelax/graph.hpp"
#include "gmrelax/spectral.hpp"
#include "gmrelax/sweep.hpp"

namespace gmrelax {

/// Stable across commands.
enum ExitCode : int {
  kExitOk = 0,        // success, unique, isomorphism found
  kExitDefect = 1,    // internal invariant failed or corpus mismatch
  kExitUsage = 2,     // bad arguments or unreadable input
  kExitNegative = 3,  // non-isomorphic or non-unique
};

enum class Format { json, csv, text };

struct CommonOptions {
  Tolerances tol;
  Format format = Format::json;
  bool timings = false;
};

struct LoadedGraph {
  Graph graph;
  std::string name;
  std::string source;  // "corpus" or the file path
};

/// "corpus:<name>", a bare corpus name that is not an existing file, or an
/// edge-list file. Parse errors name the file and line.
LoadedGraph load_graph(const std::string& spec);

int cmd_classify(const std::vector<std::string>& inputs, const CommonOptions& opts,
                 std::ostream& out, std::ostream& err);

struct MatchOptions {
  double fw_tolerance = 1e-9;
  int max_iterations = 50000;
  int exact_cap = 10;
};

int cmd_match(const std::string& a, const std::string& b, const CommonOptions& opts,
              const MatchOptions& match, std::ostream& out, std::ostream& err);

enum class CertifyMethod { fast, general, both };

int cmd_certify(const std::string& input, CertifyMethod method, const CommonOptions& opts,
                std::ostream& out, std::ostream& err);

struct EntryVerification {
  std::string name;
  bool passed = true;
  std::vector<std::string> mismatches;  // "property: expected X, got Y"
  std::string zone;
};

/// Re-derives every claimed property of `entry`. On simple spectra the fast
/// and general certificates must also agree.
EntryVerification verify_entry(const CorpusEntry& entry, const Tolerances& tol = {});

int cmd_corpus_verify(const CommonOptions& opts, std::ostream& out, std::ostream& err);

/// CSV (default for this command), a text summary, or a JSON summary. The
/// summary always goes to `err` unless the format is text.
int cmd_scan_er(const SweepConfig& config, const CommonOptions& opts, std::ostream& out,
                std::ostream& err);

}  // namespace gmrelax
