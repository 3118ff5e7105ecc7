//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "gmrelax/automorphism.hpp"
#include "gmrelax/equivalence.hpp"
#include "gmrelax/graph.hpp"
#include "gmrelax/report.hpp"

namespace gmrelax {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + v[i];
  return s;
}

const char* b(bool x) { return x ? "1" : "0"; }

}  // namespace

const char* const kSweepCsvColumns =
    "index,seed,n,p,hash,edges,simple_spectrum,friendly,regular,k,supports,"
    "theorem_2k1,theorem_sorted,marginal,certificate_method,verdict,lp_optimum,"
    "general_verdict,general_optimum,group_order,group_truncated,involution_holds,"
    "proposition1_holds,proposition1_k,conjecture_findings,conjecture_matches,"
    "twin_pairs,zone,anomalies,error";

std::uint64_t item_seed(std::uint64_t seed, int n, long index) {
  const std::uint64_t key = (static_cast<std::uint64_t>(n) << 40) ^ static_cast<std::uint64_t>(index);
  return splitmix64(splitmix64(seed) ^ key);
}

SweepRecord analyze_item(long index, int n, double p, std::uint64_t seed,
                         const SweepConfig& config) {
  SweepRecord rec;
  rec.index = index;
  rec.seed = seed;
  rec.n = n;
  rec.p = p;
  try {
    const Graph g = erdos_renyi(n, p, seed);
    AnalysisOptions opts;
    opts.tol = config.tol;
    const AnalysisReport r = analyze(g, "er", "generated", opts);
    rec.hash = r.hash;
    rec.edges = r.edges;
    rec.simple_spectrum = r.spectral.simple_spectrum;
    rec.friendly = r.spectral.friendly;
    rec.regular = r.spectral.regular;
    rec.k = r.spectral.k;
    rec.supports = r.spectral.supports;
    rec.theorem_2k1 = r.spectral.theorem_2k1;
    rec.theorem_sorted = r.spectral.theorem_sorted;
    rec.marginal = r.spectral.marginal;
    rec.zone = r.zone;

    const auto flag = [&](const char* a) { rec.anomalies.emplace_back(a); };
    if (r.certificate) {
      rec.certificate_method = to_string(r.certificate->method);
      rec.verdict = to_string(r.certificate->verdict);
      rec.lp_optimum = r.certificate->lp_optimum;
    }
    bool non_unique = r.certificate && r.certificate->verdict == Verdict::non_unique;
    if (config.cross_check && r.spectral.simple_spectrum && r.certificate) {
      const UniquenessCertificate gen = certify_uniqueness_general(g, config.tol.cert);
      rec.general_verdict = to_string(gen.verdict);
      rec.general_optimum = gen.lp_optimum;
      if (gen.verdict != r.certificate->verdict ||
          std::abs(gen.lp_optimum - r.certificate->lp_optimum) > 1e-6)
        flag(anomaly::certificate_disagreement);
      non_unique = non_unique || gen.verdict == Verdict::non_unique;
    }
    if (r.group) {
      rec.group_order = r.group->order;
      rec.group_truncated = r.group->truncated;
      rec.involution_holds = r.group->involution_holds;
      rec.proposition1_holds = r.group->proposition1_holds;
      rec.proposition1_k = r.group->proposition1_k;
      if (!r.group->involution_holds) flag(anomaly::involution_violation);
      if (!r.group->proposition1_holds) flag(anomaly::proposition1_violation);
      if (!r.group->trivial && r.certificate && r.certificate->verdict == Verdict::unique)
        flag(anomaly::necessity_violation);
      if (!r.group->trivial && r.spectral.theorem_sorted) flag(anomaly::corollary_violation);
    }
    rec.conjecture_findings = static_cast<int>(r.conjecture.size());
    bool counterexample = false;
    for (const auto& f : r.conjecture) {
      rec.conjecture_matches += f.matches;
      counterexample = counterexample || f.counterexample();
    }
    if (counterexample) flag(anomaly::conjecture_counterexample);
    if (r.spectral.theorem_sorted && non_unique) flag(anomaly::theorem_soundness);
    if (r.zone == Zone::zone2_candidate) flag(anomaly::zone2_candidate);
    rec.twin_pairs = static_cast<int>(r.twins.size());
    if (std::any_of(r.twins.begin(), r.twins.end(), [](const TwinPair& t) { return !t.consistent; }))
      flag(anomaly::twin_inconsistency);
  } catch (const std::exception& e) {
    rec.anomalies.emplace_back(anomaly::analysis_error);
    rec.error = e.what();
  }
  return rec;
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.count < 1) throw std::invalid_argument("sweep: count must be at least 1");
  if (config.n_min < 1 || config.n_max < config.n_min)
    throw std::invalid_argument("sweep: invalid order range");
  if (!(config.p >= 0.0 && config.p <= 1.0))
    throw std::invalid_argument("sweep: p must lie in [0, 1]");

  struct Item {
    int n;
    long index;
  };
  std::vector<Item> items;
  for (int n = config.n_min; n <= config.n_max; ++n)
    for (long i = 0; i < config.count; ++i) items.push_back({n, i});

  SweepResult result;
  result.records.resize(items.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < items.size();) {
      const Item& it = items[k];
      result.records[k] = analyze_item(static_cast<long>(k), it.n, config.p,
                                       item_seed(config.seed, it.n, it.index), config);
    }
  };
  const int workers = std::max(1, config.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (const auto& rec : result.records) {
    for (const auto& a : rec.anomalies) ++result.anomaly_counts[a];
    ++result.zone_counts[std::string(to_string(rec.zone))];
    result.simple_spectrum += rec.simple_spectrum;
    if (rec.general_optimum) {
      ++result.cross_checked;
      result.max_optimum_difference =
          std::max(result.max_optimum_difference, std::abs(*rec.general_optimum - rec.lp_optimum));
    }
    if (config.archive_dir && rec.zone == Zone::zone2_candidate) {
      std::filesystem::create_directories(*config.archive_dir);
      const auto path = *config.archive_dir /
                        ("zone2_n" + std::to_string(rec.n) + "_i" + std::to_string(rec.index) +
                         "_" + rec.hash + ".txt");
      std::ofstream f(path);
      write_edge_list(f, erdos_renyi(rec.n, rec.p, rec.seed));
      result.archived.push_back(path);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << kSweepCsvColumns << '\n';
  for (const auto& r : result.records) {
    out << r.index << ',' << r.seed << ',' << r.n << ',' << fmt(r.p) << ',' << r.hash << ','
        << r.edges << ',' << b(r.simple_spectrum) << ',' << b(r.friendly) << ','
        << b(r.regular) << ',' << r.k << ',' << join(r.supports) << ',' << b(r.theorem_2k1)
        << ',' << b(r.theorem_sorted) << ',' << b(r.marginal) << ',' << r.certificate_method
        << ',' << r.verdict << ',' << fmt(r.lp_optimum) << ',' << r.general_verdict << ','
        << (r.general_optimum ? fmt(*r.general_optimum) : "") << ',' << r.group_order << ','
        << b(r.group_truncated) << ',' << b(r.involution_holds) << ','
        << b(r.proposition1_holds) << ','
        << (r.proposition1_k ? std::to_string(*r.proposition1_k) : "") << ','
        << r.conjecture_findings << ',' << r.conjecture_matches << ',' << r.twin_pairs << ','
        << to_string(r.zone) << ',' << join(r.anomalies) << ',' << csv_field(r.error) << '\n';
  }
}

long hard_anomalies(const SweepResult& result) {
  long total = 0;
  for (const auto& [name, count] : result.anomaly_counts)
    if (name != anomaly::zone2_candidate) total += count;
  return total;
}

void write_sweep_summary(std::ostream& out, const SweepConfig& config,
                         const SweepResult& result) {
  const auto count = [&](const char* a) {
    const auto it = result.anomaly_counts.find(a);
    return it == result.anomaly_counts.end() ? 0L : it->second;
  };
  out << "graphs: " << result.records.size() << " (n=" << config.n_min << ".." << config.n_max
      << ", p=" << fmt(config.p) << ", seed=" << config.seed << ")\n";
  out << "simple spectrum: " << result.simple_spectrum << "\n";
  out << "(a) conjecture counterexamples: " << count(anomaly::conjecture_counterexample) << "\n";
  out << "(b) proposition1 violations: " << count(anomaly::proposition1_violation) << "\n";
  out << "(c) theorem soundness violations: " << count(anomaly::theorem_soundness) << "\n";
  out << "(d) zone-2 candidates: " << count(anomaly::zone2_candidate) << "\n";
  out << "involution violations: " << count(anomaly::involution_violation) << "\n";
  out << "certificate disagreements: " << count(anomaly::certificate_disagreement) << " of "
      << result.cross_checked << " cross-checked (max optimum difference "
      << fmt(result.max_optimum_difference) << ")\n";
  out << "necessity violations: " << count(anomaly::necessity_violation) << "\n";
  out << "corollary violations: " << count(anomaly::corollary_violation) << "\n";
  out << "twin inconsistencies: " << count(anomaly::twin_inconsistency) << "\n";
  out << "analysis errors: " << count(anomaly::analysis_error) << "\n";
  out << "zones:";
  for (const auto& [zone, n] : result.zone_counts) out << ' ' << zone << '=' << n;
  out << "\n";
  for (const auto& p : result.archived) out << "archived: " << p.string() << "\n";
}

}  // namespace gmrelax
