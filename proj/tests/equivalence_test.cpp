//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gmrelax/equivalence.hpp"

#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "gmrelax/corpus.hpp"
#include "gmrelax/spectral.hpp"
#include "oracles.hpp"

namespace gmrelax {
namespace {

struct Spectral {
  SpectralDecomposition dec;
  SupportProfile profile;
};

Spectral spectral_of(const Graph& g) {
  Spectral s{eigendecompose(g), {}};
  const Tolerances tol;
  s.profile = support_profile(s.dec, tol.orth_for(g.order()), tol.supp);
  return s;
}

UniquenessCertificate fast(const Graph& g) {
  const auto s = spectral_of(g);
  return certify_uniqueness_fast(s.dec, s.profile);
}

// Coordinates f of a commutant element Q = I - U diag(1 - f) U^T.
Eigen::VectorXd coordinates(const CommutantPolytope& p, const Eigen::MatrixXd& q) {
  const Eigen::MatrixXd& u = p.ortho_vectors();
  const Eigen::MatrixXd l = Eigen::MatrixXd::Identity(p.n(), p.n()) - q;
  Eigen::VectorXd f(p.k());
  for (int i = 0; i < p.k(); ++i) f(i) = 1.0 - u.col(i).dot(l * u.col(i));
  return f;
}

// Off-diagonal mass of a matrix, the quantity both certificates maximize.
double off_diagonal_mass(const Eigen::MatrixXd& q) { return q.sum() - q.trace(); }

Graph friendly_graph() {
  for (std::uint64_t seed = 0;; ++seed) {
    const Graph g = erdos_renyi(8, 0.5, seed);
    if (classify(g).friendly) return g;
  }
}

TEST(ChangeOfVariablesTest, Identity) {
  const Permutation s({2, 0, 1, 3});
  const auto q = change_of_variables(DoublyStochasticMatrix(Eigen::MatrixXd::Identity(4, 4)), s);
  EXPECT_TRUE(q.matrix().isApprox(s.matrix()));
}

TEST(ChangeOfVariablesTest, BarycenterIsInvariant) {
  const Permutation s({1, 3, 0, 2});
  EXPECT_TRUE(change_of_variables(barycenter(4), s).matrix().isApprox(barycenter(4).matrix()));
}

TEST(ChangeOfVariablesTest, RoundTrip) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    const Eigen::MatrixXd q = oracle::random_doubly_stochastic(rng, n);
    const Permutation p0(oracle::random_permutation(rng, n));
    const Eigen::MatrixXd shifted = q * p0.matrix().transpose();
    EXPECT_TRUE(change_of_variables(DoublyStochasticMatrix(shifted), p0).matrix().isApprox(q));
  }
}

TEST(CommutantPolytopeTest, FriendlyGraphIsAPoint) {
  const auto s = spectral_of(friendly_graph());
  const auto p = commutant_polytope(s.dec, s.profile);
  EXPECT_EQ(p.k(), 0);
  EXPECT_TRUE(p.matrix_at(Eigen::VectorXd(0)).isApprox(Eigen::MatrixXd::Identity(8, 8)));
}

TEST(CommutantPolytopeTest, Fig3ContainsTheIdentity) {
  const auto s = spectral_of(corpus("fig3").graph);
  const auto p = commutant_polytope(s.dec, s.profile);
  EXPECT_EQ(p.k(), 1);
  EXPECT_TRUE(p.contains(Eigen::VectorXd::Ones(1)));
  EXPECT_TRUE(p.matrix_at(Eigen::VectorXd::Ones(1)).isApprox(Eigen::MatrixXd::Identity(7, 7)));
}

TEST(CommutantPolytopeTest, Fig4HasASecondVertex) {
  const Graph g = corpus("fig4").graph;
  const auto s = spectral_of(g);
  const auto p = commutant_polytope(s.dec, s.profile);
  EXPECT_EQ(p.k(), 2);
  EXPECT_TRUE(p.contains(Eigen::VectorXd::Ones(2)));
  const auto cert = certify_uniqueness_fast(s.dec, s.profile);
  ASSERT_TRUE(cert.witness.has_value());
  const Eigen::VectorXd f = coordinates(p, *cert.witness);
  EXPECT_TRUE(p.contains(f, 1e-9));
  EXPECT_GT((f - Eigen::VectorXd::Ones(2)).cwiseAbs().maxCoeff(), 0.5);
}

TEST(CommutantPolytopeTest, RepeatedSpectrumIsRejected) {
  const auto s = spectral_of(corpus("fig5_left").graph);
  EXPECT_THROW(commutant_polytope(s.dec, s.profile), std::invalid_argument);
}

// Property: every point of the polytope gives a doubly stochastic matrix
// commuting with A, sampled along segments from the identity to the LP
// witness.
TEST(CommutantPolytopeTest, PropertyPointsCommute) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 300 && checked < 40; ++seed) {
    const Graph g = erdos_renyi(7, 0.5, seed);
    const auto s = spectral_of(g);
    if (!has_simple_spectrum(s.dec, 1e-8) || s.profile.k == 0) continue;
    const auto p = commutant_polytope(s.dec, s.profile);
    const auto cert = certify_uniqueness_fast(s.dec, s.profile);
    if (!cert.witness) continue;
    ++checked;
    const Eigen::VectorXd fw = coordinates(p, *cert.witness);
    const Eigen::MatrixXd a = g.matrix<double>();
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      const Eigen::VectorXd f = Eigen::VectorXd::Ones(p.k()) + t * (fw - Eigen::VectorXd::Ones(p.k()));
      ASSERT_TRUE(p.contains(f, 1e-9));
      const Eigen::MatrixXd q = p.matrix_at(f);
      EXPECT_TRUE(is_doubly_stochastic(q, 1e-9));
      EXPECT_LE((a * q - q * a).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
  EXPECT_GT(checked, 5);
}

TEST(CertifyFastTest, Fig3IsUnique) {
  const auto c = fast(corpus("fig3").graph);
  EXPECT_EQ(c.verdict, Verdict::unique);
  EXPECT_LE(c.lp_optimum, 1e-9);
  EXPECT_EQ(c.method, CertificateMethod::fast_path);
}

TEST(CertifyFastTest, Fig4IsNotUnique) {
  const Graph g = corpus("fig4").graph;
  const auto c = fast(g);
  EXPECT_EQ(c.verdict, Verdict::non_unique);
  ASSERT_TRUE(c.witness.has_value());
  const Eigen::MatrixXd a = g.matrix<double>();
  EXPECT_LE((a * *c.witness - *c.witness * a).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_TRUE(is_doubly_stochastic(*c.witness, 1e-9));
  EXPECT_NEAR(off_diagonal_mass(*c.witness), c.lp_optimum, 1e-9);
}

TEST(CertifyFastTest, FriendlyGraphIsUnique) {
  const auto c = fast(friendly_graph());
  EXPECT_EQ(c.verdict, Verdict::unique);
  EXPECT_EQ(c.lp_optimum, 0.0);
}

TEST(CertifyFastTest, RepeatedSpectrumIsRejected) {
  EXPECT_THROW(fast(corpus("fig5_right").graph), std::invalid_argument);
}

TEST(CertifyGeneralTest, FruchtBarycenterBoundsTheOptimum) {
  const Graph g = corpus("frucht").graph;
  const Eigen::MatrixXd j = barycenter(12).matrix();
  const Eigen::MatrixXd a = g.matrix<double>();
  EXPECT_LE((a * j - j * a).norm(), 1e-12);
  EXPECT_NEAR(off_diagonal_mass(j), 11.0, 1e-12);
  const auto c = certify_uniqueness_general(g);
  EXPECT_EQ(c.verdict, Verdict::non_unique);
  EXPECT_GE(c.lp_optimum, 11.0 - 1e-6);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_LE((a * *c.witness - *c.witness * a).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(CertifyGeneralTest, Fig3IsUnique) {
  const auto c = certify_uniqueness_general(corpus("fig3").graph);
  EXPECT_EQ(c.verdict, Verdict::unique);
  EXPECT_LE(c.lp_optimum, 1e-9);
  EXPECT_FALSE(c.witness.has_value());
}

TEST(CertifyGeneralTest, RepeatedSpectrumStillComputes) {
  const auto c = certify_uniqueness_general(corpus("fig5_right").graph);
  EXPECT_GE(c.lp_optimum, 0.0);
  EXPECT_EQ(c.verdict == Verdict::unique, c.lp_optimum <= 1e-7);
}

// Property: on random graphs the two certificates agree with each other and
// with the brute-force count of commuting permutations. A second commuting
// permutation forces non-uniqueness.
TEST(CertifyTest, PropertyAgreesWithBruteForce) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 3 + trial % 5;
    const Graph g = oracle::random_graph(rng, n, trial % 3 == 0 ? 0.3 : 0.5);
    const Eigen::MatrixXd a = g.matrix<double>();
    const auto general = certify_uniqueness_general(g);
    const long perms = oracle::commuting_permutation_count(a);
    if (perms >= 2) {
      EXPECT_EQ(general.verdict, Verdict::non_unique) << to_edge_list(g);
    }
    if (general.verdict == Verdict::unique) { EXPECT_EQ(perms, 1) << to_edge_list(g); }
    const auto s = spectral_of(g);
    if (has_simple_spectrum(s.dec, 1e-8)) {
      const auto f = certify_uniqueness_fast(s.dec, s.profile);
      EXPECT_EQ(f.verdict, general.verdict) << to_edge_list(g);
      EXPECT_NEAR(f.lp_optimum, general.lp_optimum, 1e-6) << to_edge_list(g);
    }
  }
}

TEST(BuildLTest, IdentityGivesZero) {
  const auto s = spectral_of(corpus("fig4").graph);
  const auto p = commutant_polytope(s.dec, s.profile);
  const auto l = build_L(p, Eigen::VectorXd::Ones(2));
  EXPECT_LE(l.l.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(l.rank, 0);
  EXPECT_TRUE(l.laplacian);
}

TEST(BuildLTest, Fig4WitnessIsALowRankLaplacian) {
  const auto s = spectral_of(corpus("fig4").graph);
  const auto p = commutant_polytope(s.dec, s.profile);
  const auto cert = certify_uniqueness_fast(s.dec, s.profile);
  ASSERT_TRUE(cert.witness);
  const auto l = build_L(p, coordinates(p, *cert.witness));
  EXPECT_TRUE(l.laplacian);
  EXPECT_LE(l.rank, 2);
  EXPECT_GE(l.rank, 1);
  double most_negative = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (i != j) most_negative = std::min(most_negative, l.l(i, j));
  EXPECT_LT(most_negative, -1e-6);
  EXPECT_LE(l.row_sum_error, 1e-12);
  // Rank confirmed with an independent eigensolver.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l.l);
  int rank = 0;
  for (int i = 0; i < 8; ++i) rank += std::abs(es.eigenvalues()(i)) > 1e-8;
  EXPECT_EQ(rank, l.rank);
}

TEST(BuildLTest, Fig3HalfIsRejectedOrRankOne) {
  const auto s = spectral_of(corpus("fig3").graph);
  const auto p = commutant_polytope(s.dec, s.profile);
  const Eigen::VectorXd f = Eigen::VectorXd::Constant(1, 0.5);
  if (p.contains(f)) {
    EXPECT_EQ(build_L(p, f).rank, 1);
  } else {
    EXPECT_THROW(build_L(p, f), std::invalid_argument);
  }
  // Theorem-backed: the interval is the single point f = 1.
  EXPECT_FALSE(p.contains(f));
}

TEST(BuildLTest, WrongLengthIsRejected) {
  const auto s = spectral_of(corpus("fig4").graph);
  const auto p = commutant_polytope(s.dec, s.profile);
  EXPECT_THROW(build_L(p, Eigen::VectorXd::Ones(3)), std::invalid_argument);
}

TEST(ExactMatchTest, IdenticalAndPermuted) {
  const Graph a = corpus("fig4").graph;
  EXPECT_EQ(exact_match(a, a).objective, 0);
  std::mt19937_64 rng(5);
  const Permutation s(oracle::random_permutation(rng, 8));
  const auto m = exact_match(a, apply_permutation(a, s));
  EXPECT_EQ(m.objective, 0);
  EXPECT_EQ(apply_permutation(a, m.permutation), apply_permutation(a, s));
}

TEST(ExactMatchTest, EdgeVersusPath) {
  const Graph a = from_edge_list(3, {{0, 1}});
  const Graph b = from_edge_list(3, {{0, 1}, {1, 2}});
  const auto brute = oracle::brute_force_match(a, b);
  EXPECT_EQ(brute.objective, 2);
  const auto m = exact_match(a, b);
  EXPECT_EQ(m.objective, 2);
  EXPECT_EQ(match_objective(a, b, m.permutation), 2);
}

TEST(ExactMatchTest, Limits) {
  EXPECT_THROW(exact_match(corpus("fig3").graph, corpus("fig4").graph), std::invalid_argument);
  EXPECT_THROW(exact_match(corpus("frucht").graph, corpus("frucht").graph, 10),
               std::invalid_argument);
  EXPECT_EQ(exact_match(corpus("frucht").graph, corpus("frucht").graph, 12).objective, 0);
}

// Property: branch and bound returns the brute-force optimum, and the
// permutation it returns attains it.
TEST(ExactMatchTest, PropertyMatchesBruteForce) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 7;
    const Graph a = oracle::random_graph(rng, n, 0.5);
    const Graph b = trial % 3 ? oracle::random_graph(rng, n, 0.5)
                              : apply_permutation(a, Permutation(oracle::random_permutation(rng, n)));
    const auto m = exact_match(a, b);
    EXPECT_EQ(m.objective, oracle::brute_force_match(a, b).objective);
    EXPECT_EQ(match_objective(a, b, m.permutation), m.objective);
  }
}

TEST(RelaxAndRoundTest, Fig3PlantedPermutation) {
  const Graph a = corpus("fig3").graph;
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const Permutation s(oracle::random_permutation(rng, 7));
    const auto r = relax_and_round(a, apply_permutation(a, s));
    EXPECT_EQ(r.rounded_objective, 0);
    EXPECT_EQ(r.rounded, s);
    EXPECT_TRUE(r.equivalent);
    EXPECT_EQ(r.isomorphic, true);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.exact->permutation, s);
  }
}

TEST(RelaxAndRoundTest, Fig3WithItself) {
  const Graph a = corpus("fig3").graph;
  EXPECT_TRUE(relax_and_round(a, a).rounded.is_identity());
}

TEST(RelaxAndRoundTest, FruchtIsFlaggedNonUnique) {
  const Graph a = corpus("frucht").graph;
  std::mt19937_64 rng(10);
  const Permutation s(oracle::random_permutation(rng, 12));
  MatchConfig cfg;
  cfg.exact_cap = 12;
  const auto r = relax_and_round(a, apply_permutation(a, s), cfg);
  EXPECT_LE(r.relaxed.objective, 1e-9);
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.certificate->verdict, Verdict::non_unique);
  EXPECT_FALSE(r.equivalent);
  EXPECT_EQ(r.isomorphic, true);
}

TEST(RelaxAndRoundTest, NonIsomorphicInputsAreNoted) {
  const auto r = relax_and_round(from_edge_list(3, {{0, 1}}), from_edge_list(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(r.isomorphic, false);
  EXPECT_GT(r.rounded_objective, 0);
  EXPECT_FALSE(r.notes.empty());
}

TEST(PredictEquivalenceTest, Corpus) {
  EXPECT_EQ(predict_equivalence(classify(corpus("fig3").graph)), Prediction::equivalent);
  EXPECT_EQ(predict_equivalence(classify(corpus("frucht").graph)), Prediction::not_equivalent);
  EXPECT_EQ(predict_equivalence(classify(corpus("fig5_right").graph)), Prediction::unknown);
}

}  // namespace
}  // namespace gmrelax
