#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "sgt/core.hpp"

namespace sgt {

/// Thrown when an exhaustive procedure is asked to enumerate too much.
class SizeLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct BalanceCheck {
  std::optional<Clustering> sides;      // set when balanced
  std::optional<Witness> witness;       // odd-negative cycle otherwise
  bool balanced() const { return sides.has_value(); }
};

struct ClusterCheck {
  std::optional<Clustering> clusters;   // positive components when clusterable
  std::optional<Witness> witness;       // bad cycle otherwise
  bool clusterable() const { return clusters.has_value(); }
};

/// Two-labels every component by BFS; a positive edge keeps the label and a
/// negative edge flips it. A conflicting edge closes an odd-negative cycle
/// through the BFS tree. O(n + m).
BalanceCheck is_balanced(const SignedGraph& g);

/// Clusterable iff no negative edge joins two nodes of one positive
/// component. The failure witness is the BFS-tree positive path between the
/// endpoints closed by that negative edge. O(n + m).
ClusterCheck is_clusterable(const SignedGraph& g);

std::optional<Witness> find_signed_triangle(const SignedGraph& g, TrianglePattern pattern);

inline constexpr Node kFrustrationNodeLimit = 24;
inline constexpr double kPartitionEnumerationLimit = 5.0e6;
inline constexpr Node kWeakFrustrationNodeLimit = 10;

/// Minimum edge deletions to reach balance, by Gray-code enumeration of all
/// 2^(n-1) bipartitions with node 0 pinned. n <= 24.
std::size_t frustration_index(const SignedGraph& g);

/// Number of set partitions of n labelled nodes into at most k blocks.
double partition_count(Node n, int k);

/// Minimum edge deletions to reach k-clusterability. Enumerates canonical
/// labelings (node 0 in cluster 0, each new node opens at most one new
/// cluster) with branch and bound. Throws SizeLimitExceeded when
/// partition_count(n, k) exceeds kPartitionEnumerationLimit.
std::size_t k_frustration_index(const SignedGraph& g, int k);

/// Minimum edge deletions to reach clusterability. n <= 10.
std::size_t weak_frustration_index(const SignedGraph& g);

/// Keeps clusters of size >= eps*n and greedily packs the smaller ones, in
/// id order, into groups closed as soon as they reach eps*n. A final group
/// below eps*n may remain.
Clustering merge_small_clusters(const Clustering& c, double eps);

struct EpsGoodCheck {
  bool good = false;
  std::size_t outgoing_positive = 0;
  std::size_t internal_negative = 0;
  double bound = 0.0;  // eps * d * |S| / 2
  std::string reason;  // empty when good
};

EpsGoodCheck is_eps_good_cluster(const SignedGraph& g, std::span<const Node> nodes, double eps, int d);

/// Re-checks a witness against `g`. Returns nullopt when valid, otherwise
/// the first failed condition. A SignedTriangle is compared against
/// `pattern` when one is given.
std::optional<std::string> verify_witness(const SignedGraph& g, const Witness& w,
                                          std::optional<TrianglePattern> pattern = std::nullopt);

/// Minimum edge deletions removing every `pattern` triangle, by a bounded
/// search tree over hitting edges. Throws SizeLimitExceeded past `max_depth`.
std::size_t triangle_free_distance(const SignedGraph& g, TrianglePattern pattern, int max_depth = 12);

enum class Property { Balance, Clusterable, KClusterable, TriangleFree };
enum class Model { Dense, Bounded };

std::string to_string(Property p);
std::string to_string(Model m);
Property parse_property(std::string_view text);
Model parse_model(std::string_view text);

/// Edge-deletion distance to a property, normalised per the query model:
/// edits / N^2 (dense) or edits / (d * N) (bounded).
struct DistanceCertificate {
  Property property = Property::Balance;
  int k = 0;                                  // KClusterable only
  std::optional<TrianglePattern> pattern;    // TriangleFree only
  Model model = Model::Dense;
  int d = 0;                                  // Bounded only
  std::size_t edits = 0;
  double epsilon = 0.0;
  bool exact = true;                          // false: edits is a lower bound
  std::string provenance;                     // "exact", "packing", "construction"
};

/// edits / N^2 (dense) or edits / (d N) (bounded).
double normalized_distance(std::size_t edits, Model model, Node n, int d);

}  // namespace sgt
