#pragma once

// Small-graph enumeration and brute-force oracles shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "sgt/core.hpp"
#include "sgt/random.hpp"

namespace sgt::testing {

inline std::vector<std::pair<Node, Node>> all_pairs(Node n) {
  std::vector<std::pair<Node, Node>> out;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) out.emplace_back(u, v);
  return out;
}

/// Calls fn on every signed graph on n labelled nodes: each pair is absent,
/// positive or negative, so 3^C(n,2) graphs.
inline void for_each_signed_graph(Node n, const std::function<void(const SignedGraph&)>& fn) {
  const auto pairs = all_pairs(n);
  std::vector<int> state(pairs.size(), 0);
  std::vector<SignedEdge> edges;
  while (true) {
    edges.clear();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (state[i] != 0) edges.push_back({pairs[i].first, pairs[i].second, state[i] == 1 ? Sign::Plus : Sign::Minus});
    }
    fn(SignedGraph::from_edges(n, edges, std::max(1, static_cast<int>(n) - 1)));
    std::size_t i = 0;
    while (i < state.size() && state[i] == 2) state[i++] = 0;
    if (i == state.size()) return;
    ++state[i];
  }
}

inline std::uint64_t signed_graph_count(Node n) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < all_pairs(n).size(); ++i) c *= 3;
  return c;
}

inline bool is_bipartite(const UnsignedGraph& g) {
  std::vector<int> color(g.adj.size(), -1);
  for (std::size_t s = 0; s < g.adj.size(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      const auto x = q.front();
      q.pop_front();
      for (Node y : g.adj[x]) {
        const auto yi = static_cast<std::size_t>(y);
        if (color[yi] < 0) {
          color[yi] = 1 - color[x];
          q.push_back(yi);
        } else if (color[yi] == color[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

/// Minimum edge deletions making `z` bipartite. Tries every 2-colouring of
/// the original nodes; subdivision nodes only neighbor originals, so each
/// picks its cheaper colour independently.
inline std::size_t gprime_bipartite_edit_distance(const ZaslavskyGraph& z) {
  std::vector<Node> originals;
  for (std::size_t i = 0; i < z.provenance.size(); ++i)
    if (z.provenance[i].is_original()) originals.push_back(static_cast<Node>(i));
  std::vector<int> color(z.graph.adj.size(), 0);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const std::uint64_t limit = std::uint64_t{1} << originals.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    for (std::size_t i = 0; i < originals.size(); ++i) color[static_cast<std::size_t>(originals[i])] = (mask >> i) & 1;
    std::size_t cost = 0;
    for (std::size_t x = 0; x < z.graph.adj.size(); ++x) {
      if (z.provenance[x].is_original()) {
        for (Node y : z.graph.adj[x]) {
          if (z.provenance[static_cast<std::size_t>(y)].is_original() && static_cast<Node>(x) < y &&
              color[x] == color[static_cast<std::size_t>(y)])
            ++cost;
        }
      } else {
        std::size_t ones = 0;
        for (Node y : z.graph.adj[x]) ones += static_cast<std::size_t>(color[static_cast<std::size_t>(y)]);
        cost += std::min(ones, z.graph.adj[x].size() - ones);
      }
    }
    best = std::min(best, cost);
  }
  return best;
}

inline SignedGraph random_signed_graph(Node n, double edge_prob, double plus_prob, RandomSource& rng,
                                       std::optional<int> degree_bound = std::nullopt) {
  std::vector<SignedEdge> edges;
  for (auto [u, v] : all_pairs(n)) {
    if (rng.bernoulli(edge_prob)) edges.push_back({u, v, rng.bernoulli(plus_prob) ? Sign::Plus : Sign::Minus});
  }
  if (!degree_bound) {
    auto g = SignedGraph::from_edges(n, edges);
    degree_bound = std::max(1, g.max_degree());
  }
  return SignedGraph::from_edges(n, edges, degree_bound);
}

/// All set partitions of n nodes as restricted-growth label strings.
inline void for_each_set_partition(Node n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == labels.size()) {
      fn(labels);
      return;
    }
    for (int c = 0; c <= used; ++c) {
      labels[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  if (n == 0) {
    fn(labels);
    return;
  }
  labels[0] = 0;
  rec(1, 1);
}

}  // namespace sgt::testing
