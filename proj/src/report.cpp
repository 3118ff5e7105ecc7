//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace gmrelax {

using nlohmann::json;

namespace {

// General LP size is n^2 variables; beyond this it is skipped.
constexpr int kGeneralCertificateMaxOrder = 30;

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig(x);
}

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

json perm_json(const Permutation& p) { return p.images(); }

std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string yes(bool b) { return b ? "true" : "false"; }

}  // namespace

double round_sig(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Zone assign_zone(const SpectralClassification& c, std::optional<bool> trivial_group,
                 bool certificate_computed) {
  if (c.regular && c.eigenvalues.size() > 1) return Zone::regular_red;
  if (!c.simple_spectrum) return Zone::nonsimple;
  if (c.friendly) return Zone::friendly;
  if (c.theorem_sorted) return Zone::theorem_green;
  if (trivial_group == false) return Zone::symmetric;
  if (trivial_group == true && certificate_computed) return Zone::zone2_candidate;
  return Zone::unresolved;
}

AnalysisReport analyze(const Graph& g, const std::string& name, const std::string& source,
                       const AnalysisOptions& options) {
  const Tolerances& tol = options.tol;
  const int n = g.order();
  AnalysisReport r;
  r.name = name;
  r.source = source;
  r.hash = content_hash(g);
  r.n = n;
  r.edges = g.edge_count();
  Timings timings;

  auto t0 = std::chrono::steady_clock::now();
  const SpectralDecomposition dec = eigendecompose(g);
  r.spectral = classify(g, dec, tol);
  const SupportProfile profile = support_profile(dec, tol.orth_for(n), tol.supp);
  timings.spectral_ms = ms_since(t0);
  if (r.spectral.marginal)
    r.notes.push_back("marginal: a spectral decision lies within 100x of its tolerance");

  t0 = std::chrono::steady_clock::now();
  if (options.certificate) {
    std::optional<UniquenessCertificate> cert;
    if (r.spectral.simple_spectrum) {
      cert = certify_uniqueness_fast(dec, profile, tol.cert, tol.eig);
    } else if (n <= kGeneralCertificateMaxOrder) {
      cert = certify_uniqueness_general(g, tol.cert);
    } else {
      r.notes.push_back("certificate skipped: repeated spectrum and n > " +
                        std::to_string(kGeneralCertificateMaxOrder));
    }
    if (cert) {
      r.certificate = CertificateSummary{cert->method, cert->verdict, cert->lp_optimum,
                                         cert->marginal, cert->lp_pivots,
                                         r.spectral.simple_spectrum};
      if (!r.spectral.simple_spectrum)
        r.notes.push_back("certificate verdict is outside theorem scope (repeated spectrum)");
      if (cert->marginal) r.notes.push_back("marginal: certificate optimum near its threshold");
    }
  }
  timings.certificate_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  std::optional<AutomorphismGroup> group;
  if (options.automorphisms && n <= kMaxAutomorphismOrder) {
    group = automorphism_group(g, options.group_cap);
    GroupSummary s;
    s.order = group->order();
    s.trivial = group->trivial;
    s.truncated = group->truncated;
    for (std::size_t i = 0; i < group->elements.size() && i < kListedElements; ++i)
      s.elements.push_back(group->elements[i]);
    const InvolutionCheck inv = verify_involution_lemma(g, dec, *group, tol);
    s.involution_applicable = inv.applicable;
    s.involution_holds = inv.holds;
    if (!inv.holds) r.notes.push_back("DEFECT: involution lemma violated: " + inv.note);
    const Proposition1Check p1 = verify_proposition1(dec, profile, *group, tol);
    s.proposition1_vacuous = p1.vacuous;
    s.proposition1_holds = p1.holds;
    s.proposition1_k = p1.k;
    s.proposition1_witness = p1.witness_indices;
    s.proposition1_odd_supports = p1.odd_support_indices;
    if (!p1.holds) r.notes.push_back("DEFECT: proposition1 check violated");
    if (!p1.odd_support_indices.empty())
      r.notes.push_back("proposition1 witness with odd support: " +
                        join(p1.odd_support_indices, ','));
    if (group->truncated) r.notes.push_back("automorphism group truncated at the cap");
    r.group = std::move(s);
  } else if (options.automorphisms) {
    r.notes.push_back("automorphisms skipped: n > " + std::to_string(kMaxAutomorphismOrder));
  }
  timings.automorphism_ms = ms_since(t0);

  TwinReport twins = detect_twin_pairs(g, dec, tol);
  r.twins = std::move(twins.pairs);
  for (auto& d : twins.diagnostics) r.notes.push_back("twin diagnostic: " + d);

  r.conjecture = conjecture_scan(g, dec, profile, group ? &*group : nullptr, tol);
  for (const auto& f : r.conjecture)
    if (f.counterexample())
      r.notes.push_back("CONJECTURE COUNTEREXAMPLE: support {" + join(f.support, ',') +
                        "} matches but the automorphism group is trivial");

  std::optional<bool> trivial;
  if (group && !group->truncated) trivial = group->trivial;
  if (group && group->truncated) trivial = false;
  r.zone = assign_zone(r.spectral, trivial, r.certificate.has_value());
  r.prediction = predict_equivalence(r.spectral);
  if (options.timings) r.timings = timings;
  return r;
}

json to_json(const AnalysisReport& r) {
  json j;
  j["schema"] = kAnalysisSchema;
  j["graph"] = {{"name", r.name}, {"source", r.source}, {"hash", r.hash},
                {"n", r.n}, {"edges", r.edges}};
  const auto& c = r.spectral;
  json eig = json::array();
  for (Eigen::Index i = 0; i < c.eigenvalues.size(); ++i) eig.push_back(number(c.eigenvalues(i)));
  j["spectral"] = {{"simple_spectrum", c.simple_spectrum},
                   {"friendly", c.friendly},
                   {"regular", c.regular},
                   {"degree", optional_json(c.degree)},
                   {"k", c.k},
                   {"supports", c.supports},
                   {"theorem_2k1", c.theorem_2k1},
                   {"theorem_sorted", c.theorem_sorted},
                   {"marginal", c.marginal},
                   {"min_gap", number(c.min_gap)},
                   {"eigenvalues", eig}};
  j["tolerances"] = {{"eig", number(c.tolerances.eig)},
                     {"orth", number(c.tolerances.orth_for(r.n))},
                     {"supp", number(c.tolerances.supp)},
                     {"cert", number(c.tolerances.cert)}};
  if (r.certificate) {
    const auto& s = *r.certificate;
    j["certificate"] = {{"method", to_string(s.method)},
                        {"verdict", to_string(s.verdict)},
                        {"lp_optimum", number(s.lp_optimum)},
                        {"marginal", s.marginal},
                        {"pivots", s.pivots},
                        {"in_theorem_scope", s.in_theorem_scope}};
  } else {
    j["certificate"] = nullptr;
  }
  if (r.group) {
    const auto& s = *r.group;
    json el = json::array();
    for (const auto& p : s.elements) el.push_back(perm_json(p));
    j["automorphisms"] = {
        {"order", s.order},
        {"trivial", s.trivial},
        {"truncated", s.truncated},
        {"elements", el},
        {"involution_lemma", {{"applicable", s.involution_applicable}, {"holds", s.involution_holds}}},
        {"proposition1",
         {{"vacuous", s.proposition1_vacuous},
          {"holds", s.proposition1_holds},
          {"k", optional_json(s.proposition1_k)},
          {"witness", s.proposition1_witness},
          {"odd_supports", s.proposition1_odd_supports}}}};
  } else {
    j["automorphisms"] = nullptr;
  }
  json tw = json::array();
  for (const auto& t : r.twins)
    tw.push_back({{"s", t.s}, {"t", t.t}, {"lambda", t.lambda},
                  {"case", to_string(t.twin_case)}, {"eigen_index", t.eigen_index},
                  {"consistent", t.consistent}});
  j["twins"] = tw;
  json cf = json::array();
  for (const auto& f : r.conjecture)
    cf.push_back({{"support", f.support}, {"vectors", f.vectors}, {"matches", f.matches},
                  {"automorphism_confirmed", optional_json(f.automorphism_confirmed)},
                  {"moved_set_matches", optional_json(f.moved_set_matches)},
                  {"marginal", f.marginal}});
  j["conjecture"] = cf;
  j["zone"] = to_string(r.zone);
  j["prediction"] = to_string(r.prediction);
  j["notes"] = r.notes;
  if (r.timings)
    j["timings_ms"] = {{"spectral", number(r.timings->spectral_ms)},
                       {"certificate", number(r.timings->certificate_ms)},
                       {"automorphism", number(r.timings->automorphism_ms)}};
  return j;
}

namespace {

TwinCase parse_twin_case(const std::string& s) {
  for (TwinCase c : {TwinCase::adjacent_no_loops, TwinCase::nonadjacent_no_loops,
                     TwinCase::adjacent_both_loops, TwinCase::nonadjacent_both_loops})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown twin case '" + s + "'");
}

Prediction parse_prediction(const std::string& s) {
  for (Prediction p : {Prediction::equivalent, Prediction::not_equivalent, Prediction::unknown})
    if (to_string(p) == s) return p;
  throw std::invalid_argument("unknown prediction '" + s + "'");
}

}  // namespace

AnalysisReport analysis_from_json(const json& j) {
  if (j.at("schema") != kAnalysisSchema)
    throw std::invalid_argument("unsupported report schema " + j.at("schema").dump());
  AnalysisReport r;
  const auto& gj = j.at("graph");
  r.name = gj.at("name");
  r.source = gj.at("source");
  r.hash = gj.at("hash");
  r.n = gj.at("n");
  r.edges = gj.at("edges");

  const auto& sj = j.at("spectral");
  auto& c = r.spectral;
  c.simple_spectrum = sj.at("simple_spectrum");
  c.friendly = sj.at("friendly");
  c.regular = sj.at("regular");
  c.degree = optional_from<int>(sj.at("degree"));
  c.k = sj.at("k");
  c.supports = sj.at("supports").get<std::vector<int>>();
  c.theorem_2k1 = sj.at("theorem_2k1");
  c.theorem_sorted = sj.at("theorem_sorted");
  c.marginal = sj.at("marginal");
  c.min_gap = number_from(sj.at("min_gap"));
  const auto& ej = sj.at("eigenvalues");
  c.eigenvalues.resize(static_cast<Eigen::Index>(ej.size()));
  for (std::size_t i = 0; i < ej.size(); ++i)
    c.eigenvalues(static_cast<Eigen::Index>(i)) = number_from(ej[i]);
  const auto& tj = j.at("tolerances");
  c.tolerances.eig = tj.at("eig");
  c.tolerances.orth = tj.at("orth").get<double>();
  c.tolerances.supp = tj.at("supp");
  c.tolerances.cert = tj.at("cert");

  if (const auto& cj = j.at("certificate"); !cj.is_null()) {
    CertificateSummary s;
    s.method = cj.at("method") == "fast_path" ? CertificateMethod::fast_path
                                              : CertificateMethod::general_lp;
    const auto v = parse_verdict(cj.at("verdict").get<std::string>());
    if (!v) throw std::invalid_argument("unknown verdict " + cj.at("verdict").dump());
    s.verdict = *v;
    s.lp_optimum = cj.at("lp_optimum");
    s.marginal = cj.at("marginal");
    s.pivots = cj.at("pivots");
    s.in_theorem_scope = cj.at("in_theorem_scope");
    r.certificate = s;
  }
  if (const auto& aj = j.at("automorphisms"); !aj.is_null()) {
    GroupSummary s;
    s.order = aj.at("order");
    s.trivial = aj.at("trivial");
    s.truncated = aj.at("truncated");
    for (const auto& e : aj.at("elements")) s.elements.emplace_back(e.get<std::vector<int>>());
    s.involution_applicable = aj.at("involution_lemma").at("applicable");
    s.involution_holds = aj.at("involution_lemma").at("holds");
    const auto& pj = aj.at("proposition1");
    s.proposition1_vacuous = pj.at("vacuous");
    s.proposition1_holds = pj.at("holds");
    s.proposition1_k = optional_from<int>(pj.at("k"));
    s.proposition1_witness = pj.at("witness").get<std::vector<int>>();
    s.proposition1_odd_supports = pj.at("odd_supports").get<std::vector<int>>();
    r.group = std::move(s);
  }
  for (const auto& t : j.at("twins")) {
    TwinPair p;
    p.s = t.at("s");
    p.t = t.at("t");
    p.lambda = t.at("lambda");
    p.twin_case = parse_twin_case(t.at("case"));
    p.eigen_index = t.at("eigen_index");
    p.consistent = t.at("consistent");
    r.twins.push_back(p);
  }
  for (const auto& f : j.at("conjecture")) {
    ConjectureFinding x;
    x.support = f.at("support").get<std::vector<int>>();
    x.vectors = f.at("vectors").get<std::vector<int>>();
    x.matches = f.at("matches");
    x.automorphism_confirmed = optional_from<bool>(f.at("automorphism_confirmed"));
    x.moved_set_matches = optional_from<bool>(f.at("moved_set_matches"));
    x.marginal = f.at("marginal");
    r.conjecture.push_back(std::move(x));
  }
  const auto zone = parse_zone(j.at("zone").get<std::string>());
  if (!zone) throw std::invalid_argument("unknown zone " + j.at("zone").dump());
  r.zone = *zone;
  r.prediction = parse_prediction(j.at("prediction"));
  r.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("timings_ms")) {
    const auto& tm = j.at("timings_ms");
    r.timings = Timings{tm.at("spectral"), tm.at("certificate"), tm.at("automorphism")};
  }
  return r;
}

std::string serialize(const AnalysisReport& r) { return to_json(r).dump(2) + "\n"; }

json to_json(const UniquenessCertificate& c, bool with_witness) {
  json j = {{"method", to_string(c.method)},
            {"verdict", to_string(c.verdict)},
            {"lp_optimum", number(c.lp_optimum)},
            {"marginal", c.marginal},
            {"pivots", c.lp_pivots}};
  if (with_witness && c.witness) {
    json w = json::array();
    for (Eigen::Index i = 0; i < c.witness->rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < c.witness->cols(); ++k) {
        const double x = (*c.witness)(i, k);
        row.push_back(number(std::abs(x) < 1e-12 ? 0.0 : x));
      }
      w.push_back(row);
    }
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

std::vector<std::pair<std::string, std::string>> flatten(const AnalysisReport& r) {
  const auto& c = r.spectral;
  std::vector<std::pair<std::string, std::string>> kv = {
      {"name", r.name},
      {"source", r.source},
      {"hash", r.hash},
      {"n", std::to_string(r.n)},
      {"edges", std::to_string(r.edges)},
      {"simple_spectrum", yes(c.simple_spectrum)},
      {"friendly", yes(c.friendly)},
      {"regular", yes(c.regular)},
      {"degree", c.degree ? std::to_string(*c.degree) : ""},
      {"k", std::to_string(c.k)},
      {"supports", join(c.supports, ';')},
      {"theorem_2k1", yes(c.theorem_2k1)},
      {"theorem_sorted", yes(c.theorem_sorted)},
      {"marginal", yes(c.marginal)},
      {"min_gap", fmt(c.min_gap)},
      {"certificate_method", r.certificate ? std::string(to_string(r.certificate->method)) : ""},
      {"verdict", r.certificate ? std::string(to_string(r.certificate->verdict)) : ""},
      {"lp_optimum", r.certificate ? fmt(r.certificate->lp_optimum) : ""},
      {"group_order", r.group ? std::to_string(r.group->order) : ""},
      {"group_truncated", r.group ? yes(r.group->truncated) : ""},
      {"twin_pairs", std::to_string(r.twins.size())},
      {"conjecture_findings", std::to_string(r.conjecture.size())},
      {"zone", std::string(to_string(r.zone))},
      {"prediction", std::string(to_string(r.prediction))},
  };
  std::string notes;
  for (std::size_t i = 0; i < r.notes.size(); ++i) notes += (i ? " | " : "") + r.notes[i];
  kv.emplace_back("notes", notes);
  return kv;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string to_csv(const std::vector<AnalysisReport>& reports) {
  std::ostringstream out;
  bool header = false;
  for (const auto& r : reports) {
    const auto kv = flatten(r);
    if (!header) {
      for (std::size_t i = 0; i < kv.size(); ++i) out << (i ? "," : "") << kv[i].first;
      out << '\n';
      header = true;
    }
    for (std::size_t i = 0; i < kv.size(); ++i) out << (i ? "," : "") << csv_field(kv[i].second);
    out << '\n';
  }
  return out.str();
}

std::string to_text(const AnalysisReport& r) {
  std::ostringstream out;
  for (const auto& [k, v] : flatten(r)) {
    if (k == "notes") continue;
    out << k << ": " << v << '\n';
  }
  for (const auto& note : r.notes) out << "note: " << note << '\n';
  return out.str();
}

}  // namespace gmrelax
