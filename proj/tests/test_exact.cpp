#include <gtest/gtest.h>

#include "sgt/exact.hpp"
#include "support.hpp"

namespace sgt {
namespace {

SignedGraph triangle(Sign a, Sign b, Sign c) {
  const std::vector<SignedEdge> e{{0, 1, a}, {1, 2, b}, {0, 2, c}};
  return SignedGraph::from_edges(3, e);
}

constexpr Sign P = Sign::Plus;
constexpr Sign M = Sign::Minus;

SignedGraph complete(Node n, Sign s) {
  std::vector<SignedEdge> e;
  for (auto [u, v] : testing::all_pairs(n)) e.push_back({u, v, s});
  return SignedGraph::from_edges(n, e);
}

TEST(IsBalanced, Examples) {
  auto plus = is_balanced(triangle(P, P, P));
  ASSERT_TRUE(plus.balanced());
  EXPECT_EQ(plus.sides->cluster_count(), 1);

  auto g = triangle(P, P, M);
  auto bad = is_balanced(g);
  ASSERT_FALSE(bad.balanced());
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(bad.witness->nodes.size(), 3u);
  EXPECT_EQ(verify_witness(g, *bad.witness), std::nullopt);

  const std::vector<SignedEdge> c4{{0, 1, M}, {1, 2, M}, {2, 3, M}, {3, 0, M}};
  auto even = is_balanced(SignedGraph::from_edges(4, c4));
  ASSERT_TRUE(even.balanced());
  EXPECT_NE(even.sides->cluster_of(0), even.sides->cluster_of(1));
  EXPECT_EQ(even.sides->cluster_of(0), even.sides->cluster_of(2));

  EXPECT_FALSE(is_balanced(triangle(M, M, M)).balanced());
}

TEST(IsClusterable, Examples) {
  auto g = triangle(P, P, M);
  auto bad = is_clusterable(g);
  ASSERT_FALSE(bad.clusterable());
  EXPECT_EQ(bad.witness->kind, WitnessKind::BadCycle);
  EXPECT_EQ(bad.witness->nodes.size(), 3u);
  EXPECT_EQ(verify_witness(g, *bad.witness), std::nullopt);

  auto neg = is_clusterable(triangle(M, M, M));
  ASSERT_TRUE(neg.clusterable());
  EXPECT_EQ(neg.clusters->cluster_count(), 3);

  auto mixed = is_clusterable(triangle(P, M, M));
  ASSERT_TRUE(mixed.clusterable());
  EXPECT_EQ(mixed.clusters->cluster_count(), 2);
  EXPECT_EQ(mixed.clusters->cluster_of(0), mixed.clusters->cluster_of(1));
  EXPECT_NE(mixed.clusters->cluster_of(0), mixed.clusters->cluster_of(2));
}

TEST(FindSignedTriangle, Examples) {
  auto g = triangle(P, P, M);
  auto w = find_signed_triangle(g, TrianglePattern::parse("++-"));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(verify_witness(g, *w, TrianglePattern(1)), std::nullopt);
  EXPECT_FALSE(find_signed_triangle(g, TrianglePattern::parse("---")).has_value());
  auto k4 = complete(4, P);
  auto w4 = find_signed_triangle(k4, TrianglePattern(0));
  ASSERT_TRUE(w4.has_value());
  EXPECT_EQ(verify_witness(k4, *w4, TrianglePattern(0)), std::nullopt);
}

TEST(FrustrationIndex, Examples) {
  EXPECT_EQ(frustration_index(triangle(P, P, P)), 0u);
  EXPECT_EQ(frustration_index(triangle(P, P, M)), 1u);
  EXPECT_EQ(frustration_index(complete(4, M)), 2u);
  EXPECT_THROW(frustration_index(SignedGraph::from_edges(25, std::vector<SignedEdge>{})), SizeLimitExceeded);
}

TEST(KFrustrationIndex, Examples) {
  EXPECT_EQ(k_frustration_index(triangle(M, M, M), 3), 0u);
  EXPECT_EQ(k_frustration_index(triangle(M, M, M), 2), 1u);
  EXPECT_EQ(k_frustration_index(triangle(P, M, M), 2), 0u);
  EXPECT_THROW(k_frustration_index(triangle(M, M, M), 0), std::invalid_argument);
  EXPECT_THROW(k_frustration_index(SignedGraph::from_edges(40, std::vector<SignedEdge>{}), 10), SizeLimitExceeded);
}

TEST(PartitionCount, BellNumbers) {
  EXPECT_DOUBLE_EQ(partition_count(3, 3), 5.0);
  EXPECT_DOUBLE_EQ(partition_count(5, 5), 52.0);
  EXPECT_DOUBLE_EQ(partition_count(10, 10), 115975.0);
  EXPECT_DOUBLE_EQ(partition_count(4, 2), 8.0);
  EXPECT_DOUBLE_EQ(partition_count(4, 1), 1.0);
}

TEST(WeakFrustrationIndex, Examples) {
  EXPECT_EQ(weak_frustration_index(triangle(P, M, M)), 0u);
  EXPECT_EQ(weak_frustration_index(triangle(P, P, M)), 1u);
  const std::vector<SignedEdge> two{{0, 1, P}, {1, 2, P}, {0, 2, M}, {3, 4, P}, {4, 5, P}, {3, 5, M}};
  EXPECT_EQ(weak_frustration_index(SignedGraph::from_edges(6, two)), 2u);
}

TEST(ExactCheckers, ExhaustiveUpToFourNodes) {
  for (Node n = 1; n <= 4; ++n) {
    testing::for_each_signed_graph(n, [&](const SignedGraph& g) {
      const auto bal = is_balanced(g);
      const auto clu = is_clusterable(g);
      const auto f = frustration_index(g);
      const auto wf = weak_frustration_index(g);
      ASSERT_EQ(bal.balanced(), f == 0);
      ASSERT_EQ(clu.clusterable(), wf == 0);
      ASSERT_LE(wf, f);
      ASSERT_EQ(k_frustration_index(g, 2), f);
      if (bal.witness) {
        ASSERT_EQ(verify_witness(g, *bal.witness), std::nullopt);
      }
      if (clu.witness) {
        ASSERT_EQ(verify_witness(g, *clu.witness), std::nullopt);
      }
      if (bal.sides) {
        ASSERT_EQ(count_violations(g, *bal.sides), 0u);
      }
      if (clu.clusters) {
        ASSERT_EQ(count_violations(g, *clu.clusters), 0u);
      }
      for (int k = 1; k < n; ++k) ASSERT_GE(k_frustration_index(g, k), k_frustration_index(g, k + 1));
      for (int m = 0; m <= 3; ++m) {
        const TrianglePattern p(m);
        const auto w = find_signed_triangle(g, p);
        ASSERT_EQ(w.has_value(), triangle_free_distance(g, p) > 0);
        if (w) {
          ASSERT_EQ(verify_witness(g, *w, p), std::nullopt);
        }
      }
    });
  }
}

TEST(KFrustrationIndex, MatchesBruteForceLabelings) {
  RandomSource rng(3);
  for (int t = 0; t < 40; ++t) {
    const Node n = 6;
    auto g = testing::random_signed_graph(n, 0.6, 0.5, rng);
    for (int k = 1; k <= 3; ++k) {
      std::size_t best = g.edge_count();
      std::vector<int> labels(n, 0);
      std::uint64_t total = 1;
      for (Node i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(k);
      for (std::uint64_t code = 0; code < total; ++code) {
        auto c = code;
        for (Node i = 0; i < n; ++i) {
          labels[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::uint64_t>(k));
          c /= static_cast<std::uint64_t>(k);
        }
        best = std::min(best, count_violations(g, Clustering::from_labels(labels)));
      }
      EXPECT_EQ(k_frustration_index(g, k), best);
    }
  }
}

TEST(TriangleFreeDistance, MatchesBruteForce) {
  RandomSource rng(11);
  for (int t = 0; t < 30; ++t) {
    auto g = testing::random_signed_graph(6, 0.7, 0.6, rng);
    const auto edges = g.edges();
    const TrianglePattern p(1);
    std::size_t best = edges.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
      const auto removed = static_cast<std::size_t>(std::popcount(mask));
      if (removed >= best) continue;
      std::vector<SignedEdge> kept;
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (!((mask >> i) & 1)) kept.push_back(edges[i]);
      if (!find_signed_triangle(SignedGraph::from_edges(6, kept), p)) best = removed;
    }
    EXPECT_EQ(triangle_free_distance(g, p), best);
  }
}

TEST(MergeSmallClusters, Examples) {
  std::vector<int> singles(10);
  for (int i = 0; i < 10; ++i) singles[static_cast<std::size_t>(i)] = i;
  auto m = merge_small_clusters(Clustering::from_labels(singles), 0.5);
  EXPECT_EQ(m.cluster_count(), 2);
  for (const auto& grp : m.members()) EXPECT_EQ(grp.size(), 5u);

  const std::vector<int> one(7, 0);
  auto whole = Clustering::from_labels(one);
  for (double eps : {0.1, 0.5, 1.0}) EXPECT_EQ(merge_small_clusters(whole, eps), whole);

  const std::vector<int> sizes{0, 0, 0, 1, 1, 2, 3, 4};
  auto merged = merge_small_clusters(Clustering::from_labels(sizes), 0.25);
  EXPECT_EQ(merged.cluster_count(), 4);
  EXPECT_EQ(merged.cluster_of(0), merged.cluster_of(2));
  EXPECT_EQ(merged.cluster_of(3), merged.cluster_of(4));
  EXPECT_NE(merged.cluster_of(0), merged.cluster_of(3));
  EXPECT_EQ(merged.cluster_of(5), merged.cluster_of(6));
  EXPECT_NE(merged.cluster_of(6), merged.cluster_of(7));

  EXPECT_THROW(merge_small_clusters(whole, 0.0), std::invalid_argument);
}

TEST(EpsGoodCluster, Examples) {
  const std::vector<SignedEdge> comp{{0, 1, P}, {1, 2, P}, {2, 3, M}};
  auto g = SignedGraph::from_edges(4, comp);
  const std::vector<Node> s{0, 1, 2};
  EXPECT_TRUE(is_eps_good_cluster(g, s, 0.001, 2).good);

  const std::vector<Node> both{2, 3};
  auto r = is_eps_good_cluster(g, both, 0.01, 2);
  EXPECT_FALSE(r.good);
  EXPECT_EQ(r.reason.rfind("outgoing positives", 0), 0u);
  const std::vector<SignedEdge> neg{{0, 1, M}};
  auto h = SignedGraph::from_edges(2, neg);
  const std::vector<Node> pair{0, 1};
  auto rn = is_eps_good_cluster(h, pair, 0.01, 1);
  EXPECT_FALSE(rn.good);
  EXPECT_EQ(rn.internal_negative, 1u);
  EXPECT_EQ(rn.reason.rfind("internal negatives", 0), 0u);

  // 3-cube, all positive: a face has 4 outgoing edges.
  std::vector<SignedEdge> cube;
  for (Node u = 0; u < 8; ++u)
    for (int b = 0; b < 3; ++b)
      if (Node v = u ^ (1 << b); u < v) cube.push_back({u, v, P});
  auto q = SignedGraph::from_edges(8, cube, 3);
  const std::vector<Node> face{0, 1, 2, 3};
  auto rf = is_eps_good_cluster(q, face, 0.1, 3);
  EXPECT_FALSE(rf.good);
  EXPECT_EQ(rf.outgoing_positive, 4u);
  EXPECT_TRUE(is_eps_good_cluster(q, face, 1.0, 3).good);
}

TEST(VerifyWitness, Reasons) {
  auto g = triangle(P, P, M);
  auto w = *is_clusterable(g).witness;
  EXPECT_EQ(verify_witness(g, w), std::nullopt);

  auto flipped = w;
  for (auto& s : flipped.signs) {
    if (s == P) {
      s = M;
      break;
    }
  }
  EXPECT_EQ(verify_witness(g, flipped).value_or(""), "bad cycle has two negative edges, expected exactly one");

  const std::vector<SignedEdge> path{{0, 1, P}, {1, 2, P}, {2, 3, M}};
  auto h = SignedGraph::from_edges(4, path);
  Witness missing{WitnessKind::BadCycle, {0, 1, 2}, {P, P, M}};
  EXPECT_EQ(verify_witness(h, missing).value_or("").rfind("missing edge", 0), 0u);

  Witness mismatch{WitnessKind::OddNegativeCycle, {0, 1, 2}, {P, M, P}};
  EXPECT_EQ(verify_witness(g, mismatch).value_or("").rfind("sign mismatch", 0), 0u);
  Witness even{WitnessKind::OddNegativeCycle, {0, 1, 2}, {P, M, M}};
  EXPECT_TRUE(verify_witness(g, even).has_value());
  Witness repeated{WitnessKind::BadCycle, {0, 1, 0}, {P, P, M}};
  EXPECT_EQ(verify_witness(g, repeated).value_or(""), "repeated node");
  Witness tri{WitnessKind::SignedTriangle, {0, 1, 2}, {P, P, M}};
  EXPECT_EQ(verify_witness(g, tri, TrianglePattern(1)), std::nullopt);
  EXPECT_TRUE(verify_witness(g, tri, TrianglePattern(0)).has_value());
  Witness shortw{WitnessKind::BadCycle, {0, 1}, {P, M}};
  EXPECT_TRUE(verify_witness(g, shortw).has_value());
}

TEST(NormalizedDistance, Models) {
  EXPECT_DOUBLE_EQ(normalized_distance(1, Model::Dense, 3, 0), 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(normalized_distance(100, Model::Bounded, 300, 2), 100.0 / 600.0);
  EXPECT_EQ(parse_property("triangle"), Property::TriangleFree);
  EXPECT_EQ(parse_model("bounded"), Model::Bounded);
  EXPECT_THROW(parse_model("sparse"), std::invalid_argument);
}

}  // namespace
}  // namespace sgt
