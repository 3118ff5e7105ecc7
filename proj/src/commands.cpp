//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/commands.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gmrelax/equivalence.hpp"
#include "gmrelax/report.hpp"

namespace gmrelax {

using nlohmann::json;

namespace {

std::string show(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string show(bool b) { return b ? "true" : "false"; }
std::string show(int x) { return std::to_string(x); }
std::string show(long x) { return std::to_string(x); }
std::string show(Verdict v) { return std::string(to_string(v)); }
std::string show(Zone z) { return std::string(to_string(z)); }

template <typename T>
void expect(EntryVerification& v, const char* what, const std::optional<T>& expected,
            const T& actual) {
  if (expected && !(*expected == actual)) {
    v.passed = false;
    v.mismatches.push_back(std::string(what) + ": expected " + show(*expected) + ", got " +
                           show(actual));
  }
}

json graph_json(const LoadedGraph& g) {
  return {{"name", g.name}, {"source", g.source}, {"hash", content_hash(g.graph)},
          {"n", g.graph.order()}};
}

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig(x);
}

}  // namespace

LoadedGraph load_graph(const std::string& spec) {
  constexpr std::string_view prefix = "corpus:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string name = spec.substr(prefix.size());
    return {corpus(name).graph, name, "corpus"};
  }
  std::error_code ec;
  if (is_corpus_name(spec) && !std::filesystem::exists(spec, ec))
    return {corpus(spec).graph, spec, "corpus"};
  try {
    Graph g = read_edge_list_file(spec);
    return {std::move(g), std::filesystem::path(spec).filename().string(), spec};
  } catch (const ParseError& e) {
    throw std::invalid_argument(spec + ": " + e.what());
  }
}

int cmd_classify(const std::vector<std::string>& inputs, const CommonOptions& opts,
                 std::ostream& out, std::ostream&) {
  AnalysisOptions ao;
  ao.tol = opts.tol;
  ao.timings = opts.timings;
  std::vector<AnalysisReport> reports;
  for (const auto& in : inputs) {
    const LoadedGraph g = load_graph(in);
    reports.push_back(analyze(g.graph, g.name, g.source, ao));
  }
  switch (opts.format) {
    case Format::json:
      if (reports.size() == 1) {
        out << serialize(reports.front());
      } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        out << arr.dump(2) << '\n';
      }
      break;
    case Format::csv: out << to_csv(reports); break;
    case Format::text:
      for (std::size_t i = 0; i < reports.size(); ++i) out << (i ? "\n" : "") << to_text(reports[i]);
      break;
  }
  return kExitOk;
}

int cmd_match(const std::string& a_spec, const std::string& b_spec, const CommonOptions& opts,
              const MatchOptions& match, std::ostream& out, std::ostream& err) {
  const LoadedGraph a = load_graph(a_spec);
  const LoadedGraph b = load_graph(b_spec);
  if (a.graph.order() != b.graph.order()) {
    err << "error: graphs have different orders (" << a.graph.order() << " and "
        << b.graph.order() << ")\n";
    return kExitUsage;
  }
  MatchConfig cfg;
  cfg.fw.tolerance = match.fw_tolerance;
  cfg.fw.max_iterations = match.max_iterations;
  cfg.exact_cap = match.exact_cap;
  cfg.tol = opts.tol;
  const MatchReport rep = relax_and_round(a.graph, b.graph, cfg);

  json j;
  j["schema"] = "gmrelax.match/1";
  j["a"] = graph_json(a);
  j["b"] = graph_json(b);
  j["rounded"] = {{"permutation", rep.rounded.images()}, {"objective", rep.rounded_objective}};
  j["relaxed"] = {{"objective", number(rep.relaxed.objective)},
                  {"dual_gap", number(rep.relaxed.dual_gap)},
                  {"iterations", rep.relaxed.iterations},
                  {"converged", rep.relaxed.converged}};
  j["exact"] = rep.exact ? json{{"permutation", rep.exact->permutation.images()},
                                {"objective", rep.exact->objective}}
                         : json(nullptr);
  j["certificate"] = rep.certificate ? to_json(*rep.certificate, false) : json(nullptr);
  j["equivalent"] = rep.equivalent;
  j["isomorphic"] = rep.isomorphic ? json(*rep.isomorphic) : json(nullptr);
  j["notes"] = rep.notes;

  switch (opts.format) {
    case Format::json: out << j.dump(2) << '\n'; break;
    case Format::csv:
      out << "a,b,n,rounded_objective,relaxed_objective,dual_gap,iterations,exact_objective,"
             "equivalent,permutation\n";
      out << csv_field(a.name) << ',' << csv_field(b.name) << ',' << a.graph.order() << ','
          << rep.rounded_objective << ',' << j["relaxed"]["objective"].dump() << ','
          << j["relaxed"]["dual_gap"].dump() << ',' << rep.relaxed.iterations << ','
          << (rep.exact ? std::to_string(rep.exact->objective) : "") << ','
          << (rep.equivalent ? "true" : "false") << ',' << csv_field(to_string(rep.rounded))
          << '\n';
      break;
    case Format::text:
      out << "permutation: " << to_string(rep.rounded) << '\n'
          << "rounded objective: " << rep.rounded_objective << '\n'
          << "relaxed objective: " << j["relaxed"]["objective"].dump() << '\n'
          << "frank-wolfe: " << rep.relaxed.iterations << " iterations, gap "
          << j["relaxed"]["dual_gap"].dump() << '\n';
      if (rep.exact) out << "exact objective: " << rep.exact->objective << '\n';
      out << "certificate on A: "
          << (rep.certificate ? std::string(to_string(rep.certificate->verdict)) : "none") << '\n';
      for (const auto& n : rep.notes) out << "note: " << n << '\n';
      break;
  }
  return rep.rounded_objective == 0 ? kExitOk : kExitNegative;
}

int cmd_certify(const std::string& input, CertifyMethod method, const CommonOptions& opts,
                std::ostream& out, std::ostream& err) {
  const LoadedGraph g = load_graph(input);
  const int n = g.graph.order();
  const SpectralDecomposition dec = eigendecompose(g.graph);
  const bool simple = has_simple_spectrum(dec, opts.tol.eig);
  if (method == CertifyMethod::fast && !simple) {
    err << "error: the fast certificate needs a simple spectrum; " << g.name
        << " has repeated eigenvalues (min gap " << min_eigen_gap(dec)
        << "). Use --method general.\n";
    return kExitUsage;
  }
  std::optional<UniquenessCertificate> fast, general;
  if (method != CertifyMethod::general && simple) {
    const SupportProfile prof = support_profile(dec, opts.tol.orth_for(n), opts.tol.supp);
    fast = certify_uniqueness_fast(dec, prof, opts.tol.cert, opts.tol.eig);
  }
  if (method != CertifyMethod::fast) general = certify_uniqueness_general(g.graph, opts.tol.cert);

  const UniquenessCertificate& primary = general ? *general : *fast;
  bool agree = true;
  if (fast && general)
    agree = fast->verdict == general->verdict &&
            std::abs(fast->lp_optimum - general->lp_optimum) <= 1e-6;

  json j;
  j["schema"] = "gmrelax.certificate/1";
  j["graph"] = graph_json(g);
  j["simple_spectrum"] = simple;
  j["in_theorem_scope"] = simple;
  j["fast"] = fast ? to_json(*fast, true) : json(nullptr);
  j["general"] = general ? to_json(*general, true) : json(nullptr);
  j["verdict"] = to_string(primary.verdict);
  j["agree"] = agree;
  if (method == CertifyMethod::both && !simple)
    j["note"] = "fast path not applicable: repeated spectrum";

  switch (opts.format) {
    case Format::json: out << j.dump(2) << '\n'; break;
    case Format::csv:
      out << "name,verdict,fast_verdict,fast_optimum,general_verdict,general_optimum,agree\n"
          << csv_field(g.name) << ',' << to_string(primary.verdict) << ','
          << (fast ? std::string(to_string(fast->verdict)) : "") << ','
          << (fast ? j["fast"]["lp_optimum"].dump() : "") << ','
          << (general ? std::string(to_string(general->verdict)) : "") << ','
          << (general ? j["general"]["lp_optimum"].dump() : "") << ','
          << (agree ? "true" : "false") << '\n';
      break;
    case Format::text:
      out << "verdict: " << to_string(primary.verdict) << '\n';
      if (fast)
        out << "fast_path: " << to_string(fast->verdict) << ", optimum "
            << j["fast"]["lp_optimum"].dump() << '\n';
      if (general)
        out << "general_lp: " << to_string(general->verdict) << ", optimum "
            << j["general"]["lp_optimum"].dump() << '\n';
      if (!simple) out << "note: repeated spectrum, verdict outside theorem scope\n";
      break;
  }
  if (!agree) {
    err << "DEFECT: fast and general certificates disagree\n";
    return kExitDefect;
  }
  return primary.verdict == Verdict::unique ? kExitOk : kExitNegative;
}

EntryVerification verify_entry(const CorpusEntry& entry, const Tolerances& tol) {
  EntryVerification v;
  v.name = entry.name;
  AnalysisOptions ao;
  ao.tol = tol;
  const AnalysisReport r = analyze(entry.graph, entry.name, "corpus", ao);
  v.zone = to_string(r.zone);
  const ExpectedProperties& e = entry.expected;

  expect(v, "regular", e.regular, r.spectral.regular);
  if (e.degree) {
    if (!r.spectral.degree) {
      v.passed = false;
      v.mismatches.push_back("degree: expected " + show(*e.degree) + ", got none");
    } else {
      expect(v, "degree", e.degree, *r.spectral.degree);
    }
  }
  expect(v, "simple_spectrum", e.simple_spectrum, r.spectral.simple_spectrum);
  if (r.group) {
    expect(v, "trivial_group", e.trivial_group, r.group->trivial);
    expect(v, "group_order", e.group_order, r.group->order);
  } else if (e.trivial_group || e.group_order) {
    v.passed = false;
    v.mismatches.push_back("automorphism group: not computed");
  }
  expect(v, "ortho_count", e.ortho_count, r.spectral.k);
  expect(v, "supports", e.supports, r.spectral.supports);
  if (e.certificate) {
    if (!r.certificate) {
      v.passed = false;
      v.mismatches.push_back("certificate: not computed");
    } else {
      expect(v, "certificate", e.certificate, r.certificate->verdict);
    }
  }
  expect(v, "zone", e.zone, r.zone);
  if (e.conjecture_confirmed) {
    bool confirmed = false;
    for (const auto& f : r.conjecture)
      confirmed = confirmed || (f.matches && f.automorphism_confirmed == true);
    expect(v, "conjecture_confirmed", e.conjecture_confirmed, confirmed);
  }
  if (r.spectral.simple_spectrum && r.certificate) {
    const UniquenessCertificate gen = certify_uniqueness_general(entry.graph, tol.cert);
    if (gen.verdict != r.certificate->verdict ||
        std::abs(gen.lp_optimum - r.certificate->lp_optimum) > 1e-6) {
      v.passed = false;
      v.mismatches.push_back("certificate methods disagree: fast " +
                             std::string(to_string(r.certificate->verdict)) + " " +
                             std::to_string(r.certificate->lp_optimum) + ", general " +
                             std::string(to_string(gen.verdict)) + " " +
                             std::to_string(gen.lp_optimum));
    }
  }
  if (r.group && (!r.group->involution_holds || !r.group->proposition1_holds)) {
    v.passed = false;
    v.mismatches.push_back("a structural theorem check failed");
  }
  return v;
}

int cmd_corpus_verify(const CommonOptions& opts, std::ostream& out, std::ostream&) {
  std::vector<EntryVerification> results;
  for (const auto& name : corpus_names()) results.push_back(verify_entry(corpus(name), opts.tol));
  int passed = 0;
  for (const auto& r : results) passed += r.passed;
  const int total = static_cast<int>(results.size());

  switch (opts.format) {
    case Format::json: {
      json arr = json::array();
      for (const auto& r : results)
        arr.push_back({{"name", r.name}, {"passed", r.passed}, {"zone", r.zone},
                       {"mismatches", r.mismatches}});
      out << json{{"schema", "gmrelax.corpus/1"}, {"entries", arr},
                  {"passed", passed}, {"total", total}}
                 .dump(2)
          << '\n';
      break;
    }
    case Format::csv:
      out << "name,passed,zone,mismatches\n";
      for (const auto& r : results) {
        std::string m;
        for (std::size_t i = 0; i < r.mismatches.size(); ++i) m += (i ? "; " : "") + r.mismatches[i];
        out << r.name << ',' << (r.passed ? "true" : "false") << ',' << r.zone << ','
            << csv_field(m) << '\n';
      }
      break;
    case Format::text:
      for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.zone << ")\n";
        for (const auto& m : r.mismatches) out << "  " << m << '\n';
      }
      out << passed << "/" << total << " entries pass\n";
      break;
  }
  return passed == total ? kExitOk : kExitDefect;
}

int cmd_scan_er(const SweepConfig& config, const CommonOptions& opts, std::ostream& out,
                std::ostream& err) {
  SweepConfig cfg = config;
  cfg.tol = opts.tol;
  const SweepResult result = run_sweep(cfg);
  switch (opts.format) {
    case Format::csv:
      write_sweep_csv(out, result);
      write_sweep_summary(err, cfg, result);
      break;
    case Format::text: write_sweep_summary(out, cfg, result); break;
    case Format::json: {
      json zones = result.zone_counts;
      json anomalies = result.anomaly_counts;
      out << json{{"schema", "gmrelax.sweep/1"},
                  {"graphs", result.records.size()},
                  {"n_min", cfg.n_min},
                  {"n_max", cfg.n_max},
                  {"p", cfg.p},
                  {"seed", cfg.seed},
                  {"simple_spectrum", result.simple_spectrum},
                  {"cross_checked", result.cross_checked},
                  {"max_optimum_difference", number(result.max_optimum_difference)},
                  {"anomalies", anomalies},
                  {"zones", zones}}
                 .dump(2)
          << '\n';
      break;
    }
  }
  const auto it = result.anomaly_counts.find(anomaly::conjecture_counterexample);
  const long counterexamples = it == result.anomaly_counts.end() ? 0 : it->second;
  if (hard_anomalies(result) - counterexamples > 0) return kExitDefect;
  if (counterexamples > 0) return kExitNegative;
  return kExitOk;
}

}  // namespace gmrelax
