#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sgt/core.hpp"
#include "sgt/exact.hpp"

namespace sgt {

enum class Family {
  ClusterableCommunities,   // k groups, positive inside, negative across
  BalancedTwoSide,          // two sides, positive inside, negative across
  AllNegativeRegular,       // random d-regular, every edge negative
  DisjointBadTriangles,     // floor(n/3) disjoint (+,+,-) triangles
  PlantedNegativeMatching,  // communities plus an internal negative matching
  PlantedTriangles,         // ceil(planted_fraction * n^2) edge-disjoint pattern triangles
};

std::string to_string(Family f);
Family parse_family(std::string_view text);

struct GenSpec {
  Family family = Family::ClusterableCommunities;
  Node n = 100;
  int d = 4;
  int k = 4;
  double planted_fraction = 0.0;
  std::uint64_t seed = 0;
  std::string pattern = "++-";  // PlantedTriangles only

  /// Throws std::invalid_argument on parameters the family cannot realise.
  void check() const;
};

struct InstanceMetadata {
  GenSpec spec;
  std::size_t edge_count = 0;
  int min_degree = 0;
  int max_degree = 0;
  bool regular = false;
  std::size_t planted = 0;              // planted triangles or matching edges
  std::vector<int> group_sizes;
  std::vector<DistanceCertificate> certificates;  // bounds known from the construction
  std::vector<std::string> notes;
};

struct GeneratedInstance {
  SignedGraph graph;
  InstanceMetadata metadata;
};

/// Pure function of `spec`. Bounded families carry degree bound spec.d;
/// PlantedTriangles and ClusterableCommunities with d >= n-1 are dense and unbounded.
GeneratedInstance generate(const GenSpec& spec);

/// Distance of `g` to a property. Exact when every connected component is
/// within the brute-force caps (balance, clusterability and triangle
/// freeness add up over components) or the graph already has the property.
/// Otherwise the larger of an edge-disjoint obstruction packing and any
/// matching construction bound in `meta`, marked inexact. nullopt when
/// neither applies.
std::optional<DistanceCertificate> certify(const SignedGraph& g, Property property, Model model, int d, int k = 0,
                                           std::optional<TrianglePattern> pattern = std::nullopt,
                                           const InstanceMetadata* meta = nullptr);

/// Greedy edge-disjoint packings; each packed obstruction needs its own deletion.
std::size_t odd_cycle_packing(const SignedGraph& g);
std::size_t bad_cycle_packing(const SignedGraph& g);
std::size_t triangle_packing(const SignedGraph& g, TrianglePattern pattern);

nlohmann::json to_json(const GenSpec& spec);
GenSpec gen_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DistanceCertificate& c);
nlohmann::json to_json(const InstanceMetadata& meta);

}  // namespace sgt
