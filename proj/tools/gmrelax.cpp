//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Command-line front end. See README.md for examples and docs/sweep_csv.md
// for the scan-er column reference.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gmrelax/commands.hpp"
#include "gmrelax/equivalence.hpp"

namespace {

using namespace gmrelax;

struct Globals {
  double tol_eig = 1e-8;
  std::optional<double> tol_orth;
  double tol_supp = 1e-8;
  double tol_cert = 1e-7;
  Format format = Format::json;
  bool format_set = false;
  std::string out;
  bool timings = false;

  CommonOptions common() const {
    CommonOptions o;
    o.tol.eig = tol_eig;
    o.tol.orth = tol_orth;
    o.tol.supp = tol_supp;
    o.tol.cert = tol_cert;
    o.format = format;
    o.timings = timings;
    return o;
  }
};

const std::string kSweepHelp =
    "Erdos-Renyi sweep. CSV columns (one row per graph, in index order):\n"
    "  index, seed (regenerates the graph with n and p), n, p, hash, edges,\n"
    "  simple_spectrum, friendly, regular, k, supports (';'-joined, ascending),\n"
    "  theorem_2k1, theorem_sorted, marginal, certificate_method, verdict,\n"
    "  lp_optimum, general_verdict, general_optimum, group_order,\n"
    "  group_truncated, involution_holds, proposition1_holds, proposition1_k,\n"
    "  conjecture_findings, conjecture_matches, twin_pairs, zone,\n"
    "  anomalies (';'-joined), error.\n"
    "Booleans are 0/1. See docs/sweep_csv.md.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph matching relaxation analysis: spectral classification, uniqueness "
               "certificates, matching and random-graph sweeps."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  const std::map<std::string, Format> formats{
      {"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};
  app.add_option("--tol-eig", g.tol_eig, "Relative eigenvalue gap for simplicity")
      ->capture_default_str();
  app.add_option("--tol-orth", g.tol_orth, "|u^T 1| threshold (default 1e-8*sqrt(n))");
  app.add_option("--tol-supp", g.tol_supp, "Nonzero-entry threshold")->capture_default_str();
  app.add_option("--tol-cert", g.tol_cert, "Certificate optimum threshold")
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->option_text("json|csv|text")
      ->each([&](const std::string&) { g.format_set = true; });
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_flag("--timings", g.timings, "Include wall-clock timings (breaks byte-identity)");

  auto* classify = app.add_subcommand("classify", "Spectral, certificate and symmetry report");
  std::vector<std::string> classify_inputs;
  classify->add_option("inputs", classify_inputs, "Edge-list files or corpus names")
      ->required();

  auto* match = app.add_subcommand("match", "Relax-and-round matching of two graphs");
  std::string match_a, match_b;
  MatchOptions mo;
  match->add_option("a", match_a, "First graph")->required();
  match->add_option("b", match_b, "Second graph")->required();
  match->add_option("--fw-tol", mo.fw_tolerance, "Frank-Wolfe gap tolerance")
      ->capture_default_str();
  match->add_option("--max-iter", mo.max_iterations, "Frank-Wolfe iteration cap")
      ->capture_default_str();
  match->add_option("--exact-cap", mo.exact_cap, "Largest n for exact search")
      ->capture_default_str();

  auto* certify = app.add_subcommand("certify", "Uniqueness certificate for AQ = QA");
  std::string certify_input;
  CertifyMethod method = CertifyMethod::both;
  certify->add_option("input", certify_input, "Edge-list file or corpus name")->required();
  certify
      ->add_option("--method", method, "Certificate to run (default both)")
      ->option_text("fast|general|both")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, CertifyMethod>{{"fast", CertifyMethod::fast},
                                               {"general", CertifyMethod::general},
                                               {"both", CertifyMethod::both}},
          CLI::ignore_case).description(""));

  auto* corpus_verify =
      app.add_subcommand("corpus-verify", "Re-derive every built-in corpus claim");

  auto* scan = app.add_subcommand("scan-er", kSweepHelp);
  SweepConfig sc;
  std::string n_range = "8";
  std::string archive;
  bool no_cross_check = false;
  scan->add_option("--n", n_range, "Order or range, e.g. 8 or 2..4")->capture_default_str();
  scan->add_option("--p", sc.p, "Edge probability")->capture_default_str();
  scan->add_option("--count", sc.count, "Graphs per order")->capture_default_str();
  scan->add_option("--seed", sc.seed, "Sweep seed")->capture_default_str();
  scan->add_option("--workers", sc.workers, "Worker threads")->capture_default_str();
  scan->add_option("--archive", archive, "Directory for ZONE2_CANDIDATE edge lists");
  scan->add_flag("--no-cross-check", no_cross_check,
                 "Skip the general LP on simple-spectrum graphs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) {
      std::cerr << "error: cannot open " << g.out << " for writing\n";
      return kExitUsage;
    }
  }
  std::ostream& out = g.out.empty() ? std::cout : file;

  try {
    if (*classify) return cmd_classify(classify_inputs, g.common(), out, std::cerr);
    if (*match) return cmd_match(match_a, match_b, g.common(), mo, out, std::cerr);
    if (*certify) return cmd_certify(certify_input, method, g.common(), out, std::cerr);
    if (*corpus_verify) {
      CommonOptions o = g.common();
      if (!g.format_set) o.format = Format::text;
      return cmd_corpus_verify(o, out, std::cerr);
    }
    if (*scan) {
      const auto dots = n_range.find("..");
      if (dots == std::string::npos) {
        sc.n_min = sc.n_max = std::stoi(n_range);
      } else {
        sc.n_min = std::stoi(n_range.substr(0, dots));
        sc.n_max = std::stoi(n_range.substr(dots + 2));
      }
      if (!archive.empty()) sc.archive_dir = archive;
      sc.cross_check = !no_cross_check;
      CommonOptions o = g.common();
      if (!g.format_set) o.format = Format::csv;
      return cmd_scan_er(sc, o, out, std::cerr);
    }
  } catch (const DefectError& e) {
    std::cerr << "DEFECT: " << e.what() << '\n';
    return kExitDefect;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "DEFECT: " << e.what() << '\n';
    return kExitDefect;
  }
  return kExitUsage;
}
