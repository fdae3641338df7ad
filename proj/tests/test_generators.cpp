#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "sgt/exact.hpp"
#include "sgt/generators.hpp"
#include "support.hpp"

namespace sgt {
namespace {

GenSpec make(Family f, Node n, int d, int k = 4, double pf = 0.0, std::uint64_t seed = 0) {
  GenSpec s;
  s.family = f;
  s.n = n;
  s.d = d;
  s.k = k;
  s.planted_fraction = pf;
  s.seed = seed;
  return s;
}

TEST(Families, NamesRoundTrip) {
  for (auto f : {Family::ClusterableCommunities, Family::BalancedTwoSide, Family::AllNegativeRegular,
                 Family::DisjointBadTriangles, Family::PlantedNegativeMatching, Family::PlantedTriangles})
    EXPECT_EQ(parse_family(to_string(f)), f);
  EXPECT_THROW(parse_family("grid"), std::invalid_argument);
}

TEST(Families, ClusterableAndBalancedByConstruction) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (int d : {2, 3, 8}) {
      auto cc = generate(make(Family::ClusterableCommunities, 300, d, 5, 0, seed));
      EXPECT_TRUE(is_clusterable(cc.graph).clusterable());
      EXPECT_EQ(validate(cc.graph), std::nullopt);
      EXPECT_LE(cc.graph.max_degree(), d);
      EXPECT_EQ(cc.graph.degree_bound(), d);
      auto bts = generate(make(Family::BalancedTwoSide, 300, d, 2, 0, seed));
      EXPECT_TRUE(is_balanced(bts.graph).balanced());
      EXPECT_LE(bts.graph.max_degree(), d);
    }
  }
}

TEST(Families, DenseCommunitiesAreComplete) {
  auto cc = generate(make(Family::ClusterableCommunities, 40, 39, 4));
  EXPECT_FALSE(cc.graph.degree_bound().has_value());
  EXPECT_EQ(cc.graph.edge_count(), 40u * 39u / 2u);
  EXPECT_TRUE(is_clusterable(cc.graph).clusterable());
  EXPECT_EQ(is_clusterable(cc.graph).clusters->cluster_count(), 4);
}

TEST(Families, AllNegativeRegular) {
  auto g = generate(make(Family::AllNegativeRegular, 1000, 3, 1, 0, 4)).graph;
  for (Node v = 0; v < 1000; ++v) EXPECT_EQ(g.degree(v), 3);
  EXPECT_EQ(g.positive_edge_count(), 0u);
  EXPECT_FALSE(is_balanced(g).balanced());
}

TEST(Families, DisjointBadTrianglesNine) {
  auto inst = generate(make(Family::DisjointBadTriangles, 9, 2));
  EXPECT_EQ(weak_frustration_index(inst.graph), 3u);
  EXPECT_EQ(frustration_index(inst.graph), 3u);
  EXPECT_EQ(inst.metadata.planted, 3u);
}

TEST(Families, PlantedMatchingStaysInsideCommunities) {
  auto inst = generate(make(Family::PlantedNegativeMatching, 2000, 8, 10, 0.05, 1));
  const auto& g = inst.graph;
  EXPECT_EQ(inst.metadata.planted, 800u);
  EXPECT_LE(g.max_degree(), 8);
  auto pos = is_clusterable(positive_subgraph(g));
  ASSERT_TRUE(pos.clusters.has_value());
  std::size_t inside = 0;
  for (const auto& e : g.edges())
    if (e.sign == Sign::Minus && pos.clusters->cluster_of(e.u) == pos.clusters->cluster_of(e.v)) ++inside;
  EXPECT_EQ(inside, 800u);
}

TEST(Families, PlantedTrianglesAreEdgeDisjoint) {
  auto spec = make(Family::PlantedTriangles, 300, 299, 1, 0.05, 2);
  auto inst = generate(spec);
  EXPECT_EQ(inst.metadata.planted, 4500u);
  EXPECT_EQ(inst.graph.edge_count(), 3u * 4500u);
  EXPECT_GE(triangle_packing(inst.graph, TrianglePattern(1)), 1u);
  EXPECT_FALSE(inst.graph.degree_bound().has_value());
}

TEST(Families, RejectImpossibleSpecs) {
  EXPECT_THROW(generate(make(Family::AllNegativeRegular, 3, 3)), std::invalid_argument);
  EXPECT_THROW(generate(make(Family::ClusterableCommunities, 5, 2, 0)), std::invalid_argument);
  EXPECT_THROW(generate(make(Family::PlantedNegativeMatching, 10, 4, 2, 0.9)), std::invalid_argument);
  EXPECT_THROW(generate(make(Family::PlantedTriangles, 10, 9, 1, 1.0)), std::invalid_argument);
}

TEST(Generate, ByteIdenticalPerSeed) {
  for (auto f : {Family::ClusterableCommunities, Family::BalancedTwoSide, Family::AllNegativeRegular,
                 Family::DisjointBadTriangles, Family::PlantedNegativeMatching}) {
    auto spec = make(f, 500, 4, 5, f == Family::PlantedNegativeMatching ? 0.05 : 0.0, 77);
    auto a = generate(spec), b = generate(spec);
    EXPECT_EQ(to_edge_list(a.graph), to_edge_list(b.graph));
    EXPECT_EQ(to_json(a.metadata).dump(), to_json(b.metadata).dump());
    if (f != Family::DisjointBadTriangles) {
      spec.seed = 78;
      EXPECT_NE(to_edge_list(generate(spec).graph), to_edge_list(a.graph)) << to_string(f);
    }
  }
}

TEST(GenSpec, JsonRoundTrip) {
  auto spec = make(Family::PlantedTriangles, 120, 5, 3, 0.01, 9);
  spec.pattern = "---";
  auto back = gen_spec_from_json(to_json(spec));
  EXPECT_EQ(to_json(back).dump(), to_json(spec).dump());
}

TEST(Certify, Examples) {
  const std::vector<SignedEdge> tri{{0, 1, Sign::Plus}, {1, 2, Sign::Plus}, {0, 2, Sign::Minus}};
  auto t = SignedGraph::from_edges(3, tri);
  auto c = certify(t, Property::Balance, Model::Dense, 0);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->edits, 1u);
  EXPECT_DOUBLE_EQ(c->epsilon, 1.0 / 9.0);
  EXPECT_TRUE(c->exact);

  auto bal = generate(make(Family::BalancedTwoSide, 100, 4)).graph;
  auto cb = certify(bal, Property::Balance, Model::Bounded, 4);
  ASSERT_TRUE(cb.has_value());
  EXPECT_EQ(cb->edits, 0u);

  auto dbt = generate(make(Family::DisjointBadTriangles, 300, 2));
  auto cd = certify(dbt.graph, Property::Clusterable, Model::Bounded, 2);
  ASSERT_TRUE(cd.has_value());
  EXPECT_EQ(cd->edits, 100u);
  EXPECT_DOUBLE_EQ(cd->epsilon, 100.0 / 600.0);
  EXPECT_TRUE(cd->exact);
  EXPECT_EQ(cd->provenance, "exact");
}

TEST(Certify, MatchesBruteForceOnSmallGraphs) {
  RandomSource rng(31);
  for (int t = 0; t < 100; ++t) {
    auto g = testing::random_signed_graph(8, 0.45, 0.5, rng);
    const int d = g.degree_bound().value();
    auto b = certify(g, Property::Balance, Model::Bounded, d);
    ASSERT_TRUE(b.has_value());
    EXPECT_EQ(b->edits, frustration_index(g));
    auto c = certify(g, Property::Clusterable, Model::Bounded, d);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->edits, weak_frustration_index(g));
    auto tr = certify(g, Property::TriangleFree, Model::Dense, 0, 0, TrianglePattern(1));
    ASSERT_TRUE(tr.has_value());
    EXPECT_EQ(tr->edits, triangle_free_distance(g, TrianglePattern(1)));
    auto k2 = certify(g, Property::KClusterable, Model::Dense, 0, 2);
    ASSERT_TRUE(k2.has_value());
    EXPECT_EQ(k2->edits, frustration_index(g));
  }
}

TEST(Certify, PackingsAreLowerBounds) {
  RandomSource rng(32);
  for (int t = 0; t < 100; ++t) {
    auto g = testing::random_signed_graph(9, 0.5, 0.5, rng);
    EXPECT_LE(odd_cycle_packing(g), frustration_index(g));
    EXPECT_LE(bad_cycle_packing(g), weak_frustration_index(g));
    EXPECT_LE(triangle_packing(g, TrianglePattern(1)), triangle_free_distance(g, TrianglePattern(1)));
  }
}

TEST(Certify, PlantedMatchingAtTenNodes) {
  // Small instances: the packing bound never exceeds the exact distance, and finds far-ness.
  int positive = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = generate(make(Family::PlantedNegativeMatching, 10, 4, 2, 0.05, seed));
    const auto exact = weak_frustration_index(inst.graph);
    EXPECT_GE(exact, 1u);
    EXPECT_LE(bad_cycle_packing(inst.graph), exact);
    positive += bad_cycle_packing(inst.graph) > 0;
  }
  EXPECT_EQ(positive, 20);
}

TEST(Certify, LargeInstancesUsePackingOrConstruction) {
  auto anr = generate(make(Family::AllNegativeRegular, 1000, 3, 1, 0, 5));
  auto c = certify(anr.graph, Property::Balance, Model::Bounded, 3, 0, std::nullopt, &anr.metadata);
  ASSERT_TRUE(c.has_value());
  EXPECT_FALSE(c->exact);
  EXPECT_EQ(c->provenance, "packing");
  EXPECT_GE(c->epsilon, 0.01);

  auto pt = generate(make(Family::PlantedTriangles, 300, 299, 1, 0.05, 2));
  auto ct = certify(pt.graph, Property::TriangleFree, Model::Dense, 0, 0, TrianglePattern(1), &pt.metadata);
  ASSERT_TRUE(ct.has_value());
  EXPECT_GE(ct->edits, 4500u);
  EXPECT_GE(ct->epsilon, 0.05);
}

TEST(AllNegativeRegular, FrustrationMarginAtSixteenNodes) {
  // Brute-force frustration of small random cubic all-negative graphs (m = 24).
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = generate(make(Family::AllNegativeRegular, 16, 3, 1, 0, seed)).graph;
    const auto f = frustration_index(g);
    EXPECT_GE(f, 2u) << "seed " << seed;
    EXPECT_GE(f, odd_cycle_packing(g));
  }
}

TEST(Metadata, JsonFields) {
  auto inst = generate(make(Family::DisjointBadTriangles, 30, 2));
  auto j = to_json(inst.metadata);
  for (const char* key : {"spec", "edge_count", "min_degree", "max_degree", "regular", "planted", "group_sizes",
                          "certificates", "notes"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["edge_count"], 30);
  EXPECT_EQ(j["certificates"][0]["provenance"], "construction");
}

}  // namespace
}  // namespace sgt
