#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgt {

using Node = std::int32_t;

/// Edge label. Plus sorts before Minus in canonical output.
enum class Sign : std::uint8_t { Plus = 0, Minus = 1 };

inline char to_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

struct Neighbor {
  Node node;
  Sign sign;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct SignedEdge {
  Node u;
  Node v;
  Sign sign;
  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

/// Multiset of three signs, stored as the number of Minus entries.
class TrianglePattern {
 public:
  constexpr explicit TrianglePattern(int minus_count) : minus_(minus_count) {
    if (minus_count < 0 || minus_count > 3) throw std::invalid_argument("triangle pattern needs 0..3 minus signs");
  }
  /// Parses three characters from {+,-}, e.g. "++-".
  static TrianglePattern parse(std::string_view text);

  constexpr int minus_count() const { return minus_; }
  bool matches(Sign a, Sign b, Sign c) const;
  std::string str() const;

  friend bool operator==(const TrianglePattern&, const TrianglePattern&) = default;

 private:
  int minus_;
};

/// Undirected simple graph with signed edges on nodes 0..n-1.
///
/// Adjacency order is preserved exactly as supplied; the bounded-degree
/// oracle exposes it as the i-th neighbor ordering. A sorted copy backs
/// pair lookups. Instances built with `from_edges` are validated; the raw
/// constructor exists so malformed inputs can be represented and reported
/// by `validate`.
class SignedGraph {
 public:
  SignedGraph() : SignedGraph(1, {}) {}
  SignedGraph(Node n, std::vector<std::vector<Neighbor>> adjacency, std::optional<int> degree_bound = std::nullopt);

  /// Builds a validated graph. Each edge is appended to both endpoints in
  /// the given order. Throws std::invalid_argument on any violation.
  static SignedGraph from_edges(Node n, std::span<const SignedEdge> edges, std::optional<int> degree_bound = std::nullopt);

  Node node_count() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Neighbor> neighbors(Node v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Node v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  int max_degree() const;
  std::optional<int> degree_bound() const { return degree_bound_; }

  /// Sign of the edge {u,v}, or nullopt when absent.
  std::optional<Sign> edge_sign(Node u, Node v) const;

  /// Edges with u < v, sorted by (u, v).
  std::vector<SignedEdge> edges() const;
  std::size_t positive_edge_count() const;

  SignedGraph with_degree_bound(std::optional<int> d) const;

  friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_ && a.degree_bound_ == b.degree_bound_;
  }

 private:
  Node n_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<std::vector<Neighbor>> sorted_;
  std::optional<int> degree_bound_;
  std::size_t edge_count_ = 0;
};

/// Returns the first violated structural invariant, or nullopt if `g` is valid.
std::optional<std::string> validate(const SignedGraph& g);

enum class WitnessKind { BadCycle, OddNegativeCycle, SignedTriangle };

std::string to_string(WitnessKind kind);
WitnessKind parse_witness_kind(std::string_view text);

/// Closed walk certificate. signs[i] labels the edge (nodes[i], nodes[i+1 mod k]).
struct Witness {
  WitnessKind kind;
  std::vector<Node> nodes;
  std::vector<Sign> signs;
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Builds a witness for the cycle `nodes`, reading signs from `g`.
Witness make_cycle_witness(const SignedGraph& g, WitnessKind kind, std::vector<Node> nodes);

/// Node partition with cluster ids 0..k-1, all used.
class Clustering {
 public:
  Clustering() = default;
  /// Relabels arbitrary non-negative labels to dense ids in first-occurrence order.
  static Clustering from_labels(std::span<const int> labels);

  Node node_count() const { return static_cast<Node>(assignment_.size()); }
  int cluster_count() const { return k_; }
  int cluster_of(Node v) const { return assignment_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& assignment() const { return assignment_; }
  std::vector<std::vector<Node>> members() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<int> assignment_;
  int k_ = 0;
};

/// Edges violating `c`: positive edges across clusters plus negative edges inside one.
std::size_t count_violations(const SignedGraph& g, const Clustering& c);

SignedGraph positive_subgraph(const SignedGraph& g);

/// Provenance of a node of the subdivided graph.
struct GPrimeNode {
  enum class Tag : std::uint8_t { Original, Subdivision };
  Tag tag;
  Node u;  // Original node, or smaller endpoint
  Node v;  // larger endpoint for Subdivision, -1 otherwise

  static GPrimeNode original(Node x) { return {Tag::Original, x, -1}; }
  static GPrimeNode subdivision(Node a, Node b) { return a < b ? GPrimeNode{Tag::Subdivision, a, b} : GPrimeNode{Tag::Subdivision, b, a}; }
  bool is_original() const { return tag == Tag::Original; }

  std::uint64_t key() const {
    return is_original() ? (static_cast<std::uint64_t>(u) << 32) | 0xFFFFFFFFu
                         : (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
  }
  friend bool operator==(const GPrimeNode&, const GPrimeNode&) = default;
};

struct UnsignedGraph {
  std::vector<std::vector<Node>> adj;
  Node node_count() const { return static_cast<Node>(adj.size()); }
  std::size_t edge_count() const;
};

struct ZaslavskyGraph {
  UnsignedGraph graph;
  std::vector<GPrimeNode> provenance;  // indexed by node of `graph`
};

/// Subdivides each positive edge (u,v) through a new node and drops signs.
/// Subdivision nodes are numbered n, n+1, ... in sorted positive-edge order.
ZaslavskyGraph zaslavsky_transform(const SignedGraph& g);

// Signed edge-list (.sgl) text format.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

SignedGraph load_edge_list(std::istream& in);
SignedGraph load_edge_list_file(const std::string& path);
void save_edge_list(const SignedGraph& g, std::ostream& out);
std::string to_edge_list(const SignedGraph& g);

}  // namespace sgt
