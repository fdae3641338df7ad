#include "sgt/exact.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

namespace sgt {
namespace {

struct BfsForest {
  std::vector<Node> parent;
  std::vector<int> depth;
  std::vector<int> label;  // component id or side, depending on caller
};

// u -> ... -> lca -> ... -> v along tree edges.
std::vector<Node> tree_path(const BfsForest& f, Node u, Node v) {
  std::vector<Node> left, right;
  Node a = u, b = v;
  while (f.depth[static_cast<std::size_t>(a)] > f.depth[static_cast<std::size_t>(b)]) {
    left.push_back(a);
    a = f.parent[static_cast<std::size_t>(a)];
  }
  while (f.depth[static_cast<std::size_t>(b)] > f.depth[static_cast<std::size_t>(a)]) {
    right.push_back(b);
    b = f.parent[static_cast<std::size_t>(b)];
  }
  while (a != b) {
    left.push_back(a);
    right.push_back(b);
    a = f.parent[static_cast<std::size_t>(a)];
    b = f.parent[static_cast<std::size_t>(b)];
  }
  left.push_back(a);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

const char* count_word(int c) {
  static const char* words[] = {"no", "one", "two", "three", "four", "five"};
  return c >= 0 && c < 6 ? words[c] : nullptr;
}

std::string negative_count_text(int c) {
  const char* word = count_word(c);
  return (word ? std::string(word) : std::to_string(c)) + " negative edge" + (c == 1 ? "" : "s");
}

}  // namespace

BalanceCheck is_balanced(const SignedGraph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  BfsForest f{std::vector<Node>(n, -1), std::vector<int>(n, 0), std::vector<int>(n, -1)};
  std::deque<Node> queue;
  for (Node root = 0; root < g.node_count(); ++root) {
    if (f.label[static_cast<std::size_t>(root)] >= 0) continue;
    f.label[static_cast<std::size_t>(root)] = 0;
    queue.push_back(root);
    while (!queue.empty()) {
      const Node u = queue.front();
      queue.pop_front();
      const int lu = f.label[static_cast<std::size_t>(u)];
      for (const auto& nb : g.neighbors(u)) {
        const int expected = lu ^ (nb.sign == Sign::Minus ? 1 : 0);
        auto& lv = f.label[static_cast<std::size_t>(nb.node)];
        if (lv < 0) {
          lv = expected;
          f.parent[static_cast<std::size_t>(nb.node)] = u;
          f.depth[static_cast<std::size_t>(nb.node)] = f.depth[static_cast<std::size_t>(u)] + 1;
          queue.push_back(nb.node);
        } else if (lv != expected) {
          return {std::nullopt, make_cycle_witness(g, WitnessKind::OddNegativeCycle, tree_path(f, u, nb.node))};
        }
      }
    }
  }
  return {Clustering::from_labels(f.label), std::nullopt};
}

ClusterCheck is_clusterable(const SignedGraph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  BfsForest f{std::vector<Node>(n, -1), std::vector<int>(n, 0), std::vector<int>(n, -1)};
  std::deque<Node> queue;
  int components = 0;
  for (Node root = 0; root < g.node_count(); ++root) {
    if (f.label[static_cast<std::size_t>(root)] >= 0) continue;
    f.label[static_cast<std::size_t>(root)] = components;
    queue.push_back(root);
    while (!queue.empty()) {
      const Node u = queue.front();
      queue.pop_front();
      for (const auto& nb : g.neighbors(u)) {
        if (nb.sign != Sign::Plus || f.label[static_cast<std::size_t>(nb.node)] >= 0) continue;
        f.label[static_cast<std::size_t>(nb.node)] = components;
        f.parent[static_cast<std::size_t>(nb.node)] = u;
        f.depth[static_cast<std::size_t>(nb.node)] = f.depth[static_cast<std::size_t>(u)] + 1;
        queue.push_back(nb.node);
      }
    }
    ++components;
  }
  for (Node u = 0; u < g.node_count(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (nb.sign == Sign::Minus && nb.node > u && f.label[static_cast<std::size_t>(u)] == f.label[static_cast<std::size_t>(nb.node)]) {
        return {std::nullopt, make_cycle_witness(g, WitnessKind::BadCycle, tree_path(f, u, nb.node))};
      }
    }
  }
  return {Clustering::from_labels(f.label), std::nullopt};
}

std::optional<Witness> find_signed_triangle(const SignedGraph& g, TrianglePattern pattern) {
  for (Node u = 0; u < g.node_count(); ++u) {
    auto nbrs = g.neighbors(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i].node < u) continue;
      for (std::size_t j = 0; j < nbrs.size(); ++j) {
        if (nbrs[j].node <= nbrs[i].node) continue;
        auto closing = g.edge_sign(nbrs[i].node, nbrs[j].node);
        if (closing && pattern.matches(nbrs[i].sign, *closing, nbrs[j].sign)) {
          return Witness{WitnessKind::SignedTriangle, {u, nbrs[i].node, nbrs[j].node}, {nbrs[i].sign, *closing, nbrs[j].sign}};
        }
      }
    }
  }
  return std::nullopt;
}

std::size_t frustration_index(const SignedGraph& g) {
  const Node n = g.node_count();
  if (n > kFrustrationNodeLimit) {
    throw SizeLimitExceeded("frustration_index enumerates bipartitions only for n <= " + std::to_string(kFrustrationNodeLimit));
  }
  std::vector<std::uint8_t> side(static_cast<std::size_t>(n), 0);
  std::size_t violated = 0;
  for (const auto& e : g.edges()) violated += (e.sign == Sign::Minus);
  std::size_t best = violated;
  const std::uint64_t states = n > 1 ? (std::uint64_t{1} << (n - 1)) : 1;
  for (std::uint64_t step = 1; step < states && best > 0; ++step) {
    const Node v = static_cast<Node>(std::countr_zero(step)) + 1;
    const auto sv = side[static_cast<std::size_t>(v)];
    long delta = 0;
    for (const auto& nb : g.neighbors(v)) {
      const bool same = side[static_cast<std::size_t>(nb.node)] == sv;
      const bool bad = (nb.sign == Sign::Plus) != same;
      delta += bad ? -1 : 1;
    }
    side[static_cast<std::size_t>(v)] = sv ^ 1;
    violated = static_cast<std::size_t>(static_cast<long>(violated) + delta);
    best = std::min(best, violated);
  }
  return best;
}

double partition_count(Node n, int k) {
  if (n <= 0) return 1.0;
  k = std::min<int>(k, n);
  // Stirling numbers of the second kind, row by row.
  std::vector<double> row(static_cast<std::size_t>(k) + 1, 0.0);
  row[0] = 1.0;
  for (Node i = 1; i <= n; ++i) {
    for (int j = std::min<int>(i, k); j >= 1; --j) {
      row[static_cast<std::size_t>(j)] = static_cast<double>(j) * row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j - 1)];
    }
    row[0] = 0.0;
  }
  double total = 0.0;
  for (int j = 1; j <= k; ++j) total += row[static_cast<std::size_t>(j)];
  return total;
}

namespace {

class PartitionSearch {
 public:
  PartitionSearch(const SignedGraph& g, int k) : n_(g.node_count()), k_(k), earlier_(static_cast<std::size_t>(n_)) {
    for (Node u = 0; u < n_; ++u) {
      for (const auto& nb : g.neighbors(u)) {
        if (nb.node < u) earlier_[static_cast<std::size_t>(u)].push_back(nb);
      }
    }
    label_.assign(static_cast<std::size_t>(n_), 0);
    best_ = g.edge_count();  // every edge deleted is always feasible
  }

  std::size_t run() {
    if (n_ > 0) descend(1, 1, 0);
    return best_;
  }

 private:
  void descend(Node v, int used, std::size_t cost) {
    if (cost >= best_) return;
    if (v == n_) {
      best_ = cost;
      return;
    }
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      std::size_t added = 0;
      for (const auto& nb : earlier_[static_cast<std::size_t>(v)]) {
        const bool same = label_[static_cast<std::size_t>(nb.node)] == c;
        added += (nb.sign == Sign::Plus) != same;
      }
      label_[static_cast<std::size_t>(v)] = c;
      descend(v + 1, std::max(used, c + 1), cost + added);
    }
  }

  Node n_;
  int k_;
  std::vector<std::vector<Neighbor>> earlier_;
  std::vector<int> label_;
  std::size_t best_;
};

}  // namespace

std::size_t k_frustration_index(const SignedGraph& g, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const double count = partition_count(g.node_count(), k);
  if (count > kPartitionEnumerationLimit) {
    throw SizeLimitExceeded("k_frustration_index: " + std::to_string(static_cast<long long>(count)) +
                            " partitions exceed the enumeration limit");
  }
  return PartitionSearch(g, k).run();
}

std::size_t weak_frustration_index(const SignedGraph& g) {
  if (g.node_count() > kWeakFrustrationNodeLimit) {
    throw SizeLimitExceeded("weak_frustration_index enumerates partitions only for n <= " + std::to_string(kWeakFrustrationNodeLimit));
  }
  return k_frustration_index(g, g.node_count());
}

Clustering merge_small_clusters(const Clustering& c, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  const double threshold = eps * static_cast<double>(c.node_count()) - 1e-9;
  const auto groups = c.members();
  std::vector<int> relabel(groups.size(), -1);
  int next = 0;
  int open_group = -1;
  std::size_t open_size = 0;
  for (std::size_t id = 0; id < groups.size(); ++id) {
    const auto size = groups[id].size();
    if (static_cast<double>(size) >= threshold) {
      relabel[id] = next++;
      continue;
    }
    if (open_group < 0) {
      open_group = next++;
      open_size = 0;
    }
    relabel[id] = open_group;
    open_size += size;
    if (static_cast<double>(open_size) >= threshold) open_group = -1;
  }
  std::vector<int> labels(static_cast<std::size_t>(c.node_count()));
  for (Node v = 0; v < c.node_count(); ++v) labels[static_cast<std::size_t>(v)] = relabel[static_cast<std::size_t>(c.cluster_of(v))];
  return Clustering::from_labels(labels);
}

EpsGoodCheck is_eps_good_cluster(const SignedGraph& g, std::span<const Node> nodes, double eps, int d) {
  std::vector<char> inside(static_cast<std::size_t>(g.node_count()), 0);
  std::size_t size = 0;
  for (Node v : nodes) {
    if (!inside[static_cast<std::size_t>(v)]) ++size;
    inside[static_cast<std::size_t>(v)] = 1;
  }
  if (size == 0) throw std::invalid_argument("eps-good check needs a nonempty node set");
  EpsGoodCheck out;
  for (Node u = 0; u < g.node_count(); ++u) {
    if (!inside[static_cast<std::size_t>(u)]) continue;
    for (const auto& nb : g.neighbors(u)) {
      const bool other_inside = inside[static_cast<std::size_t>(nb.node)];
      if (nb.sign == Sign::Plus && !other_inside) ++out.outgoing_positive;
      if (nb.sign == Sign::Minus && other_inside && nb.node > u) ++out.internal_negative;
    }
  }
  out.bound = eps * d * static_cast<double>(size) / 2.0;
  const bool outgoing_ok = static_cast<double>(out.outgoing_positive) <= out.bound;
  const bool internal_ok = static_cast<double>(out.internal_negative) <= out.bound;
  out.good = outgoing_ok && internal_ok;
  if (!outgoing_ok) {
    out.reason = "outgoing positives: " + std::to_string(out.outgoing_positive) + " > " + std::to_string(out.bound);
  } else if (!internal_ok) {
    out.reason = "internal negatives: " + std::to_string(out.internal_negative) + " > " + std::to_string(out.bound);
  }
  return out;
}

std::optional<std::string> verify_witness(const SignedGraph& g, const Witness& w, std::optional<TrianglePattern> pattern) {
  const std::size_t len = w.nodes.size();
  if (len == 0) return "empty witness";
  if (w.signs.size() != len) return "sign count does not match node count";
  if (len < 3) return "cycle shorter than 3";
  if (w.kind == WitnessKind::SignedTriangle && len != 3) return "triangle witness must have 3 nodes";
  std::vector<Node> sorted = w.nodes;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0 || sorted.back() >= g.node_count()) return "node out of range";
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "repeated node";
  const int minus = static_cast<int>(std::count(w.signs.begin(), w.signs.end(), Sign::Minus));
  switch (w.kind) {
    case WitnessKind::BadCycle:
      if (minus != 1) return "bad cycle has " + negative_count_text(minus) + ", expected exactly one";
      break;
    case WitnessKind::OddNegativeCycle:
      if (minus % 2 == 0) return "cycle has " + negative_count_text(minus) + ", expected an odd count";
      break;
    case WitnessKind::SignedTriangle:
      if (pattern && pattern->minus_count() != minus) return "triangle signs do not match pattern " + pattern->str();
      break;
  }
  for (std::size_t i = 0; i < len; ++i) {
    const Node a = w.nodes[i];
    const Node b = w.nodes[(i + 1) % len];
    auto s = g.edge_sign(a, b);
    const std::string edge = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (!s) return "missing edge " + edge;
    if (*s != w.signs[i]) return "sign mismatch on edge " + edge;
  }
  return std::nullopt;
}

namespace {

// Iterative-deepening search: some edge of the first surviving triangle
// must be deleted.
bool can_hit_all(const std::vector<std::array<std::size_t, 3>>& triangles, std::vector<char>& removed, int budget) {
  for (const auto& tri : triangles) {
    if (removed[tri[0]] || removed[tri[1]] || removed[tri[2]]) continue;
    if (budget == 0) return false;
    for (std::size_t e : tri) {
      removed[e] = 1;
      const bool ok = can_hit_all(triangles, removed, budget - 1);
      removed[e] = 0;
      if (ok) return true;
    }
    return false;
  }
  return true;
}

}  // namespace

std::size_t triangle_free_distance(const SignedGraph& g, TrianglePattern pattern, int max_depth) {
  std::vector<std::pair<Node, Node>> edge_ids;
  auto id_of = [&](Node a, Node b) {
    const std::pair key{std::min(a, b), std::max(a, b)};
    auto it = std::find(edge_ids.begin(), edge_ids.end(), key);
    if (it != edge_ids.end()) return static_cast<std::size_t>(it - edge_ids.begin());
    edge_ids.push_back(key);
    return edge_ids.size() - 1;
  };
  std::vector<std::array<std::size_t, 3>> triangles;
  for (Node u = 0; u < g.node_count(); ++u) {
    auto nbrs = g.neighbors(u);
    for (const auto& a : nbrs) {
      if (a.node < u) continue;
      for (const auto& b : nbrs) {
        if (b.node <= a.node) continue;
        auto closing = g.edge_sign(a.node, b.node);
        if (closing && pattern.matches(a.sign, *closing, b.sign)) {
          triangles.push_back({id_of(u, a.node), id_of(a.node, b.node), id_of(u, b.node)});
        }
      }
    }
  }
  std::vector<char> removed(edge_ids.size(), 0);
  for (int depth = 0; depth <= max_depth; ++depth) {
    if (can_hit_all(triangles, removed, depth)) return static_cast<std::size_t>(depth);
  }
  throw SizeLimitExceeded("triangle_free_distance: more than " + std::to_string(max_depth) + " deletions needed");
}

std::string to_string(Property p) {
  switch (p) {
    case Property::Balance: return "balance";
    case Property::Clusterable: return "clusterability";
    case Property::KClusterable: return "k-clusterability";
    case Property::TriangleFree: return "triangle";
  }
  return "unknown";
}

std::string to_string(Model m) { return m == Model::Dense ? "dense" : "bounded"; }

Property parse_property(std::string_view text) {
  if (text == "balance") return Property::Balance;
  if (text == "clusterability") return Property::Clusterable;
  if (text == "k-clusterability") return Property::KClusterable;
  if (text == "triangle") return Property::TriangleFree;
  throw std::invalid_argument("unknown property '" + std::string(text) + "'");
}

Model parse_model(std::string_view text) {
  if (text == "dense") return Model::Dense;
  if (text == "bounded") return Model::Bounded;
  throw std::invalid_argument("unknown model '" + std::string(text) + "'");
}

double normalized_distance(std::size_t edits, Model model, Node n, int d) {
  const double nn = static_cast<double>(n);
  if (model == Model::Dense) return static_cast<double>(edits) / (nn * nn);
  if (d < 1) throw std::invalid_argument("bounded-model distance needs a degree bound");
  return static_cast<double>(edits) / (static_cast<double>(d) * nn);
}

}  // namespace sgt
