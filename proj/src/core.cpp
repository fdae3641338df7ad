#include "sgt/core.hpp"

#include <algorithm>
#include <unordered_map>

namespace sgt {

TrianglePattern TrianglePattern::parse(std::string_view text) {
  if (text.size() != 3) throw std::invalid_argument("triangle pattern must have exactly 3 signs, got '" + std::string(text) + "'");
  int minus = 0;
  for (char c : text) {
    if (c == '-') {
      ++minus;
    } else if (c != '+') {
      throw std::invalid_argument("triangle pattern sign must be '+' or '-', got '" + std::string(1, c) + "'");
    }
  }
  return TrianglePattern(minus);
}

bool TrianglePattern::matches(Sign a, Sign b, Sign c) const {
  int minus = (a == Sign::Minus) + (b == Sign::Minus) + (c == Sign::Minus);
  return minus == minus_;
}

std::string TrianglePattern::str() const {
  return std::string(static_cast<std::size_t>(3 - minus_), '+') + std::string(static_cast<std::size_t>(minus_), '-');
}

SignedGraph::SignedGraph(Node n, std::vector<std::vector<Neighbor>> adjacency, std::optional<int> degree_bound)
    : n_(n), adj_(std::move(adjacency)), degree_bound_(degree_bound) {
  if (n_ < 0) throw std::invalid_argument("node count must be non-negative");
  adj_.resize(static_cast<std::size_t>(n_));
  sorted_ = adj_;
  std::size_t endpoint_total = 0;
  for (auto& list : sorted_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    endpoint_total += list.size();
  }
  edge_count_ = endpoint_total / 2;
}

SignedGraph SignedGraph::from_edges(Node n, std::span<const SignedEdge> edges, std::optional<int> degree_bound) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(n));
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
    }
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, e.sign});
    if (e.u != e.v) adj[static_cast<std::size_t>(e.v)].push_back({e.u, e.sign});
  }
  SignedGraph g(n, std::move(adj), degree_bound);
  if (auto violation = validate(g)) throw std::invalid_argument(*violation);
  return g;
}

int SignedGraph::max_degree() const {
  int best = 0;
  for (const auto& list : adj_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

std::optional<Sign> SignedGraph::edge_sign(Node u, Node v) const {
  const auto& list = sorted_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(list.begin(), list.end(), v, [](const Neighbor& a, Node key) { return a.node < key; });
  if (it == list.end() || it->node != v) return std::nullopt;
  return it->sign;
}

std::vector<SignedEdge> SignedGraph::edges() const {
  std::vector<SignedEdge> out;
  out.reserve(edge_count_);
  for (Node u = 0; u < n_; ++u) {
    for (const auto& nb : sorted_[static_cast<std::size_t>(u)]) {
      if (nb.node > u) out.push_back({u, nb.node, nb.sign});
    }
  }
  return out;
}

std::size_t SignedGraph::positive_edge_count() const {
  std::size_t count = 0;
  for (Node u = 0; u < n_; ++u) {
    for (const auto& nb : adj_[static_cast<std::size_t>(u)]) {
      if (nb.node > u && nb.sign == Sign::Plus) ++count;
    }
  }
  return count;
}

SignedGraph SignedGraph::with_degree_bound(std::optional<int> d) const {
  SignedGraph copy = *this;
  copy.degree_bound_ = d;
  return copy;
}

std::optional<std::string> validate(const SignedGraph& g) {
  const Node n = g.node_count();
  if (n < 1) return "graph has no nodes";
  if (auto d = g.degree_bound(); d && *d < 1) return "degree bound must be positive";
  for (Node u = 0; u < n; ++u) {
    auto nbrs = g.neighbors(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const Node v = nbrs[i].node;
      if (v < 0 || v >= n) return "neighbor " + std::to_string(v) + " of node " + std::to_string(u) + " out of range";
      if (v == u) return "self-loop at " + std::to_string(u);
      for (std::size_t j = 0; j < i; ++j) {
        if (nbrs[j].node == v) {
          return "duplicate edge (" + std::to_string(std::min(u, v)) + "," + std::to_string(std::max(u, v)) + ")";
        }
      }
    }
  }
  for (Node u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) {
      auto back = g.edge_sign(nb.node, u);
      if (!back || *back != nb.sign) {
        return "asymmetric edge (" + std::to_string(std::min(u, nb.node)) + "," + std::to_string(std::max(u, nb.node)) + ")";
      }
    }
  }
  if (auto d = g.degree_bound()) {
    for (Node u = 0; u < n; ++u) {
      if (g.degree(u) > *d) {
        return "node " + std::to_string(u) + " has degree " + std::to_string(g.degree(u)) + " exceeding bound " + std::to_string(*d);
      }
    }
  }
  return std::nullopt;
}

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::BadCycle: return "bad_cycle";
    case WitnessKind::OddNegativeCycle: return "odd_negative_cycle";
    case WitnessKind::SignedTriangle: return "signed_triangle";
  }
  return "unknown";
}

WitnessKind parse_witness_kind(std::string_view text) {
  if (text == "bad_cycle") return WitnessKind::BadCycle;
  if (text == "odd_negative_cycle") return WitnessKind::OddNegativeCycle;
  if (text == "signed_triangle") return WitnessKind::SignedTriangle;
  throw std::invalid_argument("unknown witness kind '" + std::string(text) + "'");
}

Witness make_cycle_witness(const SignedGraph& g, WitnessKind kind, std::vector<Node> nodes) {
  Witness w{kind, std::move(nodes), {}};
  w.signs.reserve(w.nodes.size());
  for (std::size_t i = 0; i < w.nodes.size(); ++i) {
    const Node a = w.nodes[i];
    const Node b = w.nodes[(i + 1) % w.nodes.size()];
    auto s = g.edge_sign(a, b);
    if (!s) throw std::logic_error("cycle uses missing edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    w.signs.push_back(*s);
  }
  return w;
}

Clustering Clustering::from_labels(std::span<const int> labels) {
  Clustering c;
  c.assignment_.resize(labels.size());
  std::unordered_map<int, int> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) throw std::invalid_argument("cluster labels must be non-negative");
    auto [it, inserted] = remap.try_emplace(labels[i], c.k_);
    if (inserted) ++c.k_;
    c.assignment_[i] = it->second;
  }
  return c;
}

std::vector<std::vector<Node>> Clustering::members() const {
  std::vector<std::vector<Node>> out(static_cast<std::size_t>(k_));
  for (std::size_t v = 0; v < assignment_.size(); ++v) out[static_cast<std::size_t>(assignment_[v])].push_back(static_cast<Node>(v));
  return out;
}

std::size_t count_violations(const SignedGraph& g, const Clustering& c) {
  std::size_t bad = 0;
  for (const auto& e : g.edges()) {
    const bool same = c.cluster_of(e.u) == c.cluster_of(e.v);
    if ((e.sign == Sign::Plus) != same) ++bad;
  }
  return bad;
}

SignedGraph positive_subgraph(const SignedGraph& g) {
  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(g.node_count()));
  for (Node u = 0; u < g.node_count(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (nb.sign == Sign::Plus) adj[static_cast<std::size_t>(u)].push_back(nb);
    }
  }
  return SignedGraph(g.node_count(), std::move(adj), g.degree_bound());
}

std::size_t UnsignedGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adj) total += list.size();
  return total / 2;
}

ZaslavskyGraph zaslavsky_transform(const SignedGraph& g) {
  const Node n = g.node_count();
  std::vector<SignedEdge> positive;
  for (const auto& e : g.edges()) {
    if (e.sign == Sign::Plus) positive.push_back(e);
  }
  auto subdivision_id = [&](Node a, Node b) {
    const Node lo = std::min(a, b), hi = std::max(a, b);
    auto it = std::lower_bound(positive.begin(), positive.end(), std::pair{lo, hi},
                               [](const SignedEdge& e, const std::pair<Node, Node>& key) { return std::pair{e.u, e.v} < key; });
    return n + static_cast<Node>(it - positive.begin());
  };

  ZaslavskyGraph out;
  const std::size_t total = static_cast<std::size_t>(n) + positive.size();
  out.graph.adj.resize(total);
  out.provenance.reserve(total);
  for (Node v = 0; v < n; ++v) out.provenance.push_back(GPrimeNode::original(v));
  for (const auto& e : positive) {
    out.provenance.push_back(GPrimeNode::subdivision(e.u, e.v));
    out.graph.adj[out.provenance.size() - 1] = {e.u, e.v};
  }
  for (Node u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) {
      out.graph.adj[static_cast<std::size_t>(u)].push_back(nb.sign == Sign::Minus ? nb.node : subdivision_id(u, nb.node));
    }
  }
  return out;
}

}  // namespace sgt
