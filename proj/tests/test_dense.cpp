#include <cmath>

#include <gtest/gtest.h>

#include "sgt/dense_testers.hpp"
#include "sgt/exact.hpp"
#include "sgt/generators.hpp"
#include "support.hpp"

namespace sgt {
namespace {

constexpr Sign P = Sign::Plus;
constexpr Sign M = Sign::Minus;

SignedGraph complete(Node n, Sign s) {
  std::vector<SignedEdge> e;
  for (auto [u, v] : testing::all_pairs(n)) e.push_back({u, v, s});
  return SignedGraph::from_edges(n, e);
}

TEST(DenseParams, SampleSizes) {
  DenseParams p;
  p.eps = 0.1;
  EXPECT_EQ(p.resolved_triple_samples(), 10000u);
  EXPECT_EQ(p.balance_sample_size(), 461u);
  EXPECT_EQ(p.cluster_count_bound(), 80);
  EXPECT_EQ(p.clusterability_subset_size(), 1000u);
  EXPECT_EQ(p.edge_count_samples(0.1), 800u);
  p.triple_samples = 5;
  EXPECT_EQ(p.resolved_triple_samples(), 5u);
  p.eps = 0.0;
  EXPECT_THROW(p.check(), std::invalid_argument);
}

TEST(TriangleDense, PatternFreeAccepts) {
  auto g = complete(12, M);
  DenseOracle o(g);
  DenseParams p;
  p.eps = 0.3;
  RandomSource rng(1);
  for (int t = 0; t < 20; ++t) {
    auto v = test_triangle_dense(o, TrianglePattern(1), p, rng);
    EXPECT_EQ(v.decision, Decision::Accept);
    EXPECT_LE(v.queries_used, v.query_budget);
    EXPECT_EQ(v.query_budget, 3 * p.resolved_triple_samples());
  }
}

TEST(TriangleDense, EveryTripleMatches) {
  auto g = complete(10, M);
  DenseOracle o(g);
  DenseParams p;
  p.triple_samples = 1;
  RandomSource rng(2);
  auto v = test_triangle_dense(o, TrianglePattern(3), p, rng);
  ASSERT_EQ(v.decision, Decision::Reject);
  EXPECT_EQ(verify_witness(g, *v.witness, TrianglePattern(3)), std::nullopt);
  EXPECT_EQ(v.queries_used, 3u);
}

TEST(TriangleDense, TinyGraphAccepts) {
  auto g = complete(2, P);
  DenseOracle o(g);
  RandomSource rng(0);
  EXPECT_EQ(test_triangle_dense(o, TrianglePattern(0), DenseParams{}, rng).decision, Decision::Accept);
}

TEST(BalanceDense, BalancedAlwaysAccepts) {
  GenSpec spec{Family::BalancedTwoSide, 60, 59, 2, 0.0, 4};
  auto g = generate(spec).graph;
  ASSERT_TRUE(is_balanced(g).balanced());
  DenseOracle o(g);
  DenseParams p;
  p.eps = 0.3;
  RandomSource rng(5);
  for (int t = 0; t < 20; ++t) {
    auto v = test_balance_dense(o, p, rng);
    EXPECT_EQ(v.decision, Decision::Accept);
    EXPECT_LE(v.queries_used, v.query_budget);
  }
}

TEST(BalanceDense, TwoNodesAccept) {
  const std::vector<SignedEdge> e{{0, 1, M}};
  auto g = SignedGraph::from_edges(2, e);
  DenseOracle o(g);
  RandomSource rng(3);
  EXPECT_EQ(test_balance_dense(o, DenseParams{}, rng).decision, Decision::Accept);
}

TEST(BalanceDense, UnbalancedWitnessUsesOriginalIds) {
  auto g = complete(30, M);
  DenseOracle o(g);
  DenseParams p;
  p.eps = 0.5;
  RandomSource rng(8);
  auto v = test_balance_dense(o, p, rng);
  ASSERT_EQ(v.decision, Decision::Reject);
  EXPECT_EQ(verify_witness(g, *v.witness), std::nullopt);
  const auto s = p.balance_sample_size();
  EXPECT_LE(v.queries_used, s * (s - 1) / 2);
}

TEST(BalanceDense, QueryCountDoesNotDependOnN) {
  DenseParams p;
  p.eps = 0.5;
  std::vector<double> means;
  for (Node n : {500, 5000}) {
    auto g = SignedGraph::from_edges(n, std::vector<SignedEdge>{});
    DenseOracle o(g);
    RandomSource rng(1);
    std::uint64_t total = 0;
    for (int t = 0; t < 20; ++t) total += test_balance_dense(o, p, rng).queries_used;
    means.push_back(static_cast<double>(total) / 20.0);
  }
  const double s = static_cast<double>(p.balance_sample_size());
  EXPECT_NEAR(means[1], s * (s - 1) / 2, s * (s - 1) / 2 * 0.01);
  EXPECT_NEAR(means[0] / means[1], 1.0, 0.02);
}

TEST(EdgeCount, EmptyAndComplete) {
  RandomSource rng(4);
  auto empty = SignedGraph::from_edges(50, std::vector<SignedEdge>{});
  DenseOracle oe(empty);
  EXPECT_EQ(estimate_edge_count(oe, 0.1, 8.0, rng).value, 0.0);
  auto full = complete(50, P);
  DenseOracle of(full);
  auto est = estimate_edge_count(of, 0.1, 8.0, rng);
  EXPECT_DOUBLE_EQ(est.value, 50.0 * 49.0 / 2.0);
  EXPECT_EQ(est.queries_used, 800u);
}

TEST(EdgeCount, HalfDensityConcentrates) {
  RandomSource gen(12);
  auto g = testing::random_signed_graph(400, 0.5, 0.5, gen);
  DenseOracle o(g);
  const double truth = static_cast<double>(g.edge_count());
  int good = 0;
  RandomSource rng(13);
  for (int t = 0; t < 100; ++t) {
    if (std::abs(estimate_edge_count(o, 0.05, 8.0, rng).value - truth) <= 0.05 * 400.0 * 400.0) ++good;
  }
  EXPECT_GE(good, 84);
}

TEST(ClusterabilityDense, EpsOneAcceptsWithoutQueries) {
  auto g = complete(10, M);
  DenseOracle o(g);
  DenseParams p;
  p.eps = 1.0;
  RandomSource rng(1);
  auto v = test_clusterability_dense(o, p, rng);
  EXPECT_EQ(v.decision, Decision::Accept);
  EXPECT_EQ(o.query_count(), 0u);
}

TEST(ClusterabilityDense, RejectCarriesBadCycle) {
  GenSpec spec{Family::DisjointBadTriangles, 60, 2, 1, 0.0, 0};
  auto g = generate(spec).graph;
  DenseOracle o(g);
  DenseParams p;
  p.eps = 1.0 / 180.0;  // 20 triangles = eps * N^2 edits
  RandomSource rng(3);
  auto v = test_clusterability_dense(o, p, rng);
  ASSERT_EQ(v.decision, Decision::Reject);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(verify_witness(g, *v.witness), std::nullopt);
  EXPECT_DOUBLE_EQ(v.estimate.value(), 20.0);
}

TEST(FrustrationEstimate, SampledWitnessIsLifted) {
  GenSpec spec{Family::DisjointBadTriangles, 300, 2, 1, 0.0, 0};
  auto g = generate(spec).graph;
  DenseOracle o(g);
  DenseParams p;
  p.eps = 0.5;
  p.c_e = 1.0;
  p.subset_cap = 250;
  RandomSource rng(4);
  int witnessed = 0;
  for (int t = 0; t < 20; ++t) {
    auto est = frustration_estimate_dense(o, p, rng);
    ASSERT_FALSE(est.exact_fallback);
    if (est.witness) {
      ++witnessed;
      EXPECT_EQ(verify_witness(g, *est.witness), std::nullopt);
    }
  }
  EXPECT_GT(witnessed, 0);
}

TEST(FrustrationEstimate, CompletePositiveIsNearZero) {
  auto g = complete(80, P);
  DenseOracle o(g);
  DenseParams p;
  p.eps = 0.2;
  RandomSource rng(6);
  auto est = frustration_estimate_dense(o, p, rng);
  EXPECT_LE(est.value, 0.2 * 80 * 80);
  EXPECT_LE(est.queries_used, est.query_budget);
}

TEST(FrustrationEstimate, SampledRegimeStaysWithinBudget) {
  GenSpec spec{Family::DisjointBadTriangles, 3000, 2, 1, 0.0, 0};
  auto g = generate(spec).graph;
  DenseOracle o(g);
  DenseParams p;
  p.eps = 0.2;
  p.subset_cap = 200;
  RandomSource rng(6);
  auto est = frustration_estimate_dense(o, p, rng);
  EXPECT_FALSE(est.exact_fallback);
  EXPECT_LE(est.queries_used, est.query_budget);
  EXPECT_GE(est.queries_used, est.query_budget - 200);
  EXPECT_LE(std::abs(est.value - 1000.0), 0.2 * 3000.0 * 3000.0);
}

TEST(FrustrationEstimate, FullReadIsExactOnSmallGraphs) {
  GenSpec spec{Family::DisjointBadTriangles, 30, 2, 1, 0.0, 0};
  auto g = generate(spec).graph;
  DenseOracle o(g);
  RandomSource rng(2);
  auto est = frustration_estimate_dense(o, DenseParams{}, rng);
  EXPECT_TRUE(est.exact_fallback);
  EXPECT_DOUBLE_EQ(est.value, 10.0);
  EXPECT_EQ(est.queries_used, 30u * 29u / 2u);
}

TEST(LocalSearch, NeverBelowExact) {
  RandomSource gen(21);
  for (int t = 0; t < 60; ++t) {
    auto g = testing::random_signed_graph(8, 0.5, 0.5, gen);
    for (int k : {1, 2, 3, 8}) {
      RandomSource rng(static_cast<std::uint64_t>(t * 10 + k));
      auto r = local_search_k_frustration(g, k, rng, 4);
      EXPECT_GE(r.violations, k_frustration_index(g, k));
      EXPECT_EQ(count_violations(g, r.clustering), r.violations);
      EXPECT_LE(r.clustering.cluster_count(), k);
    }
  }
}

TEST(LocalSearch, FindsZeroOnClusterableGraphs) {
  GenSpec spec{Family::ClusterableCommunities, 120, 6, 5, 0.0, 3};
  auto g = generate(spec).graph;
  RandomSource rng(0);
  EXPECT_EQ(local_search_k_frustration(g, 5, rng).violations, 0u);
  EXPECT_EQ(local_search_k_frustration(g, 40, rng).violations, 0u);
}

}  // namespace
}  // namespace sgt
