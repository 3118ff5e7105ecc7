//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Reports, commands, the sweep driver and the gmrelax executable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "gmrelax/commands.hpp"
#include "gmrelax/corpus.hpp"
#include "gmrelax/report.hpp"
#include "gmrelax/sweep.hpp"
#include "oracles.hpp"

namespace gmrelax {
namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / ("gmrelax_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

fs::path write_graph(const Graph& g, const std::string& name) {
  const fs::path p = temp_dir() / name;
  std::ofstream(p) << to_edge_list(g);
  return p;
}

CommonOptions json_options() { return CommonOptions{}; }

SpectralClassification flags(bool regular, bool simple, bool friendly, bool sorted) {
  SpectralClassification c;
  c.regular = regular;
  c.simple_spectrum = simple;
  c.friendly = friendly;
  c.theorem_sorted = sorted;
  c.eigenvalues = Eigen::VectorXd::Zero(5);
  return c;
}

TEST(ZoneTest, Precedence) {
  EXPECT_EQ(assign_zone(flags(true, true, false, false), true, true), Zone::regular_red);
  EXPECT_EQ(assign_zone(flags(false, false, false, false), true, true), Zone::nonsimple);
  EXPECT_EQ(assign_zone(flags(false, true, true, true), false, true), Zone::friendly);
  EXPECT_EQ(assign_zone(flags(false, true, false, true), false, true), Zone::theorem_green);
  EXPECT_EQ(assign_zone(flags(false, true, false, false), false, true), Zone::symmetric);
  EXPECT_EQ(assign_zone(flags(false, true, false, false), true, true), Zone::zone2_candidate);
  EXPECT_EQ(assign_zone(flags(false, true, false, false), true, false), Zone::unresolved);
  EXPECT_EQ(assign_zone(flags(false, true, false, false), std::nullopt, true), Zone::unresolved);
}

TEST(AnalyzeTest, CorpusZones) {
  EXPECT_EQ(analyze(corpus("fig3").graph, "fig3", "corpus").zone, Zone::theorem_green);
  EXPECT_EQ(analyze(corpus("frucht").graph, "frucht", "corpus").zone, Zone::regular_red);
  const auto right = analyze(corpus("fig5_right").graph, "fig5_right", "corpus");
  EXPECT_EQ(right.zone, Zone::nonsimple);
  EXPECT_EQ(right.spectral.k, 0);
  ASSERT_TRUE(right.group);
  EXPECT_TRUE(right.group->trivial);
  EXPECT_EQ(analyze(corpus("fig4").graph, "fig4", "corpus").zone, Zone::symmetric);
}

TEST(AnalyzeTest, JsonRoundTripIsByteStable) {
  for (const auto& name : corpus_names()) {
    const auto r = analyze(corpus(name).graph, name, "corpus");
    const std::string text = serialize(r);
    EXPECT_EQ(text, serialize(analyze(corpus(name).graph, name, "corpus")));
    const auto parsed = nlohmann::json::parse(text);
    EXPECT_EQ(parsed["schema"], kAnalysisSchema);
    EXPECT_EQ(serialize(analysis_from_json(parsed)), text) << name;
  }
}

TEST(AnalyzeTest, KeysAreSorted) {
  const std::string text = serialize(analyze(corpus("paw").graph, "paw", "corpus"));
  const auto j = nlohmann::json::parse(text);
  std::string prev;
  for (const auto& [key, value] : j.items()) {
    EXPECT_LT(prev, key);
    prev = key;
  }
}

TEST(AnalyzeTest, RoundSig) {
  EXPECT_EQ(round_sig(0.1 + 0.2), 0.3);
  EXPECT_EQ(round_sig(1.0 / 3.0), 0.333333333333);
  EXPECT_EQ(round_sig(0.0), 0.0);
}

TEST(CsvFieldTest, Quoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(CorpusVerifyTest, AllEntriesPass) {
  for (const auto& name : corpus_names()) {
    const auto v = verify_entry(corpus(name));
    EXPECT_TRUE(v.passed) << name << ": " << (v.mismatches.empty() ? "" : v.mismatches[0]);
  }
  std::ostringstream out, err;
  CommonOptions text;
  text.format = Format::text;
  EXPECT_EQ(cmd_corpus_verify(text, out, err), kExitOk);
  EXPECT_NE(out.str().find("7/7 entries pass"), std::string::npos);
}

TEST(CorpusVerifyTest, CorruptedFig3Fails) {
  const CorpusEntry good = corpus("fig3");
  auto edges = good.graph.edges();
  edges.pop_back();
  const CorpusEntry bad{"fig3", from_edge_list(good.graph.order(), edges), good.expected};
  const auto v = verify_entry(bad);
  EXPECT_FALSE(v.passed);
  ASSERT_FALSE(v.mismatches.empty());
  // Each mismatch names the property before the colon.
  for (const auto& m : v.mismatches) EXPECT_NE(m.find(':'), std::string::npos) << m;
}

TEST(CorpusVerifyTest, OrthogonalityThresholdSweep) {
  for (double orth : {1e-6, 1e-8, 1e-10}) {
    Tolerances tol;
    tol.orth = orth;
    for (const auto& name : corpus_names()) {
      const auto v = verify_entry(corpus(name), tol);
      EXPECT_TRUE(v.passed) << name << " at " << orth;
      EXPECT_EQ(v.zone, verify_entry(corpus(name)).zone);
    }
  }
}

TEST(CertifyCommandTest, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_certify("frucht", CertifyMethod::general, json_options(), out, err), kExitNegative);
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["verdict"], "non_unique");
  EXPECT_GE(j["general"]["lp_optimum"].get<double>(), 11.0 - 1e-6);

  out.str("");
  EXPECT_EQ(cmd_certify("fig3", CertifyMethod::both, json_options(), out, err), kExitOk);
  j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["fast"]["verdict"], "unique");
  EXPECT_EQ(j["general"]["verdict"], "unique");
  EXPECT_LE(j["fast"]["lp_optimum"].get<double>(), 1e-9);
  EXPECT_LE(j["general"]["lp_optimum"].get<double>(), 1e-9);

  out.str("");
  EXPECT_EQ(cmd_certify("fig4", CertifyMethod::both, json_options(), out, err), kExitNegative);
  j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["fast"]["verdict"], "non_unique");
  EXPECT_EQ(j["general"]["verdict"], "non_unique");

  out.str("");
  EXPECT_EQ(cmd_certify("fig5_right", CertifyMethod::fast, json_options(), out, err), kExitUsage);
}

TEST(MatchCommandTest, ExitCodes) {
  const Graph fig3 = corpus("fig3").graph;
  std::mt19937_64 rng(1);
  const Permutation s(oracle::random_permutation(rng, 7));
  const fs::path a = write_graph(fig3, "fig3.txt");
  const fs::path b = write_graph(apply_permutation(fig3, s), "fig3_permuted.txt");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_match(a.string(), b.string(), json_options(), {}, out, err), kExitOk);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["rounded"]["permutation"].get<std::vector<int>>(), s.images());

  out.str("");
  EXPECT_EQ(cmd_match("fig3", "fig4", json_options(), {}, out, err), kExitUsage);

  const fs::path p2 = write_graph(from_edge_list(2, {{0, 1}}), "p2.txt");
  out.str("");
  EXPECT_EQ(cmd_match(p2.string(), p2.string(), json_options(), {}, out, err), kExitOk);

  const fs::path edge = write_graph(from_edge_list(3, {{0, 1}}), "edge.txt");
  const fs::path path = write_graph(from_edge_list(3, {{0, 1}, {1, 2}}), "path.txt");
  out.str("");
  EXPECT_EQ(cmd_match(edge.string(), path.string(), json_options(), {}, out, err), kExitNegative);
}

TEST(LoadGraphTest, Sources) {
  EXPECT_EQ(load_graph("corpus:paw").graph, corpus("paw").graph);
  EXPECT_EQ(load_graph("paw").source, "corpus");
  EXPECT_THROW(load_graph("/nonexistent/file.txt"), std::invalid_argument);
  const fs::path bad = temp_dir() / "bad.txt";
  std::ofstream(bad) << "3 1\n0 9\n";
  try {
    load_graph(bad.string());
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

std::string sweep_csv(SweepConfig c) {
  std::ostringstream out;
  write_sweep_csv(out, run_sweep(c));
  return out.str();
}

TEST(SweepTest, DeterministicAcrossRunsAndWorkers) {
  SweepConfig c;
  c.n_min = c.n_max = 6;
  c.count = 1000;
  c.seed = 7;
  const std::string first = sweep_csv(c);
  EXPECT_EQ(first, sweep_csv(c));
  c.workers = 3;
  EXPECT_EQ(first, sweep_csv(c));
  std::istringstream in(first);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kSweepCsvColumns);
  int rows = 0;
  const auto columns = std::count(line.begin(), line.end(), ',');
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), columns);
  }
  EXPECT_EQ(rows, 1000);
}

TEST(SweepTest, RecordsRegenerateTheirGraph) {
  SweepConfig c;
  c.n_min = c.n_max = 7;
  c.count = 50;
  const auto r = run_sweep(c);
  for (const auto& rec : r.records)
    EXPECT_EQ(content_hash(erdos_renyi(rec.n, rec.p, rec.seed)), rec.hash);
}

// Certificates on tiny graphs against the brute-force permutation count.
TEST(SweepTest, SmallOrdersAgreeWithBruteForce) {
  SweepConfig c;
  c.n_min = 2;
  c.n_max = 4;
  c.count = 500;
  const auto r = run_sweep(c);
  ASSERT_EQ(r.records.size(), 1500U);
  EXPECT_EQ(hard_anomalies(r), 0);
  for (const auto& rec : r.records) {
    ASSERT_TRUE(rec.error.empty()) << rec.error;
    const Graph g = erdos_renyi(rec.n, rec.p, rec.seed);
    const long perms = oracle::commuting_permutation_count(g.matrix<double>());
    if (perms >= 2) { EXPECT_EQ(rec.verdict, "non_unique") << to_edge_list(g); }
    if (rec.verdict == "unique") { EXPECT_EQ(perms, 1) << to_edge_list(g); }
  }
}

TEST(SweepTest, ArchivesZoneTwoCandidates) {
  SweepConfig c;
  c.n_min = c.n_max = 8;
  c.count = 100;
  c.seed = 42;
  c.archive_dir = temp_dir() / "archive";
  const auto r = run_sweep(c);
  for (const auto& p : r.archived) {
    ASSERT_TRUE(fs::exists(p));
    const Graph g = read_edge_list_file(p);
    EXPECT_EQ(analyze(g, "archived", "file").zone, Zone::zone2_candidate);
  }
  long zone2 = 0;
  for (const auto& rec : r.records) zone2 += rec.zone == Zone::zone2_candidate;
  EXPECT_EQ(static_cast<long>(r.archived.size()), zone2);
}

TEST(SweepTest, RejectsBadConfig) {
  SweepConfig c;
  c.count = 0;
  EXPECT_THROW(run_sweep(c), std::invalid_argument);
  c.count = 1;
  c.p = 1.5;
  EXPECT_THROW(run_sweep(c), std::invalid_argument);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GMRELAX_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(ExecutableTest, ExitCodeContract) {
  EXPECT_EQ(run_cli("--help"), kExitOk);
  EXPECT_EQ(run_cli("--no-such-flag classify fig3"), kExitUsage);
  EXPECT_EQ(run_cli("classify /nonexistent/graph.txt"), kExitUsage);
  EXPECT_EQ(run_cli("certify fig3"), kExitOk);
  EXPECT_EQ(run_cli("certify frucht --method general"), kExitNegative);
  EXPECT_EQ(run_cli("certify fig5_right --method fast"), kExitUsage);
  EXPECT_EQ(run_cli("match fig3 fig4"), kExitUsage);
  EXPECT_EQ(run_cli("match paw paw"), kExitOk);
  EXPECT_EQ(run_cli("corpus-verify"), kExitOk);
  EXPECT_EQ(run_cli("--format csv classify fig3 fig4"), kExitOk);
  EXPECT_EQ(run_cli("scan-er --n 5 --count 20"), kExitOk);
}

TEST(ExecutableTest, OutFileMatchesStdout) {
  const fs::path a = temp_dir() / "a.json";
  const fs::path b = temp_dir() / "b.json";
  ASSERT_EQ(std::system((std::string(GMRELAX_CLI) + " --out " + a.string() + " classify fig4").c_str()), 0);
  ASSERT_EQ(std::system((std::string(GMRELAX_CLI) + " classify fig4 > " + b.string()).c_str()), 0);
  std::ifstream fa(a), fb(b);
  const std::string sa((std::istreambuf_iterator<char>(fa)), {});
  const std::string sb((std::istreambuf_iterator<char>(fb)), {});
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
}

}  // namespace
}  // namespace gmrelax
