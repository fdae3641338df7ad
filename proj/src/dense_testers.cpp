#include "sgt/dense_testers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "sgt/exact.hpp"

namespace sgt {
namespace {

constexpr double kExactSubproblemLimit = 2.0e5;

std::uint64_t ceil_to_u64(double x) {
  if (!(x < 1.8e19)) return std::uint64_t{1} << 62;
  return static_cast<std::uint64_t>(std::ceil(x - 1e-12));
}

std::uint64_t pairs(std::uint64_t s) { return s < 2 ? 0 : s * (s - 1) / 2; }

Node uniform_node(RandomSource& rng, Node n) { return static_cast<Node>(rng.uniform_below(static_cast<std::uint64_t>(n))); }

std::optional<Sign> to_sign(PairAnswer a) {
  if (a == PairAnswer::Absent) return std::nullopt;
  return a == PairAnswer::Plus ? Sign::Plus : Sign::Minus;
}

// Queries every slot pair with distinct nodes; duplicate slots stay
// non-adjacent twins.
SignedGraph query_slot_graph(DenseOracle& o, const std::vector<Node>& slots) {
  std::vector<std::vector<Neighbor>> adj(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (std::size_t j = i + 1; j < slots.size(); ++j) {
      if (slots[i] == slots[j]) continue;
      if (auto s = to_sign(o.query(slots[i], slots[j]))) {
        adj[i].push_back({static_cast<Node>(j), *s});
        adj[j].push_back({static_cast<Node>(i), *s});
      }
    }
  }
  return SignedGraph(static_cast<Node>(slots.size()), std::move(adj));
}

// Bad cycle among the pairs already read, in original ids. Twins collapse
// onto one node, so the search runs on the distinct sampled nodes.
std::optional<Witness> observed_bad_cycle(const SignedGraph& h, const std::vector<Node>& slots) {
  std::vector<Node> distinct = slots;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  auto local_id = [&](Node v) { return static_cast<Node>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()); };
  std::vector<SignedEdge> edges;
  for (const auto& e : h.edges()) {
    Node a = local_id(slots[static_cast<std::size_t>(e.u)]), b = local_id(slots[static_cast<std::size_t>(e.v)]);
    edges.push_back({std::min(a, b), std::max(a, b), e.sign});
  }
  std::sort(edges.begin(), edges.end(), [](const SignedEdge& x, const SignedEdge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  edges.erase(std::unique(edges.begin(), edges.end(), [](const SignedEdge& x, const SignedEdge& y) { return x.u == y.u && x.v == y.v; }),
              edges.end());
  auto check = is_clusterable(SignedGraph::from_edges(static_cast<Node>(std::max<std::size_t>(1, distinct.size())), edges));
  if (!check.witness) return std::nullopt;
  Witness w = *check.witness;
  for (auto& v : w.nodes) v = distinct[static_cast<std::size_t>(v)];
  return w;
}

std::size_t solve_k_frustration(const SignedGraph& h, int k, const DenseParams& p, RandomSource& rng, bool& exact) {
  exact = partition_count(h.node_count(), k) <= kExactSubproblemLimit;
  if (exact) return k_frustration_index(h, k);
  return local_search_k_frustration(h, k, rng, p.local_search_restarts, p.local_search_move_factor).violations;
}

}  // namespace

void DenseParams::check() const {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (!(c_b > 0 && c_e > 0 && c_c > 0 && local_search_move_factor > 0)) throw std::invalid_argument("dense constants must be positive");
  if (subset_cap < 2) throw std::invalid_argument("subset_cap must be at least 2");
  if (triple_samples && *triple_samples < 1) throw std::invalid_argument("triple_samples must be positive");
  if (local_search_restarts < 1) throw std::invalid_argument("local_search_restarts must be positive");
}

std::uint64_t DenseParams::resolved_triple_samples() const {
  return triple_samples ? *triple_samples : std::max<std::uint64_t>(1, ceil_to_u64(10.0 / (eps * eps * eps)));
}

std::uint64_t DenseParams::balance_sample_size() const {
  return std::max<std::uint64_t>(2, ceil_to_u64(c_b * std::log(1.0 / eps) / eps));
}

std::uint64_t DenseParams::edge_count_samples(double error_eps) const {
  return std::max<std::uint64_t>(1, ceil_to_u64(c_e / (error_eps * error_eps)));
}

int DenseParams::cluster_count_bound() const { return static_cast<int>(ceil_to_u64(8.0 / eps)); }

std::uint64_t DenseParams::clusterability_subset_size() const {
  const double k = cluster_count_bound();
  return std::clamp<std::uint64_t>(ceil_to_u64(c_c * k * std::log(k) / (eps * eps)), 2, subset_cap);
}

Verdict test_triangle_dense(DenseOracle& o, TrianglePattern pattern, const DenseParams& p, RandomSource& rng) {
  p.check();
  const std::uint64_t before = o.query_count();
  const std::uint64_t samples = p.resolved_triple_samples();
  Verdict verdict;
  verdict.query_budget = 3 * samples;
  const Node n = o.node_count();
  if (n < 3) return verdict;
  for (std::uint64_t t = 0; t < samples; ++t) {
    const Node a = uniform_node(rng, n);
    Node b = uniform_node(rng, n - 1);
    if (b >= a) ++b;
    Node c = uniform_node(rng, n - 2);
    // Skip over a and b in increasing order so c is uniform on the rest.
    const Node lo = std::min(a, b), hi = std::max(a, b);
    if (c >= lo) ++c;
    if (c >= hi) ++c;
    const auto ab = to_sign(o.query(a, b));
    const auto bc = to_sign(o.query(b, c));
    const auto ca = to_sign(o.query(c, a));
    if (ab && bc && ca && pattern.matches(*ab, *bc, *ca)) {
      verdict.decision = Decision::Reject;
      verdict.witness = Witness{WitnessKind::SignedTriangle, {a, b, c}, {*ab, *bc, *ca}};
      break;
    }
  }
  verdict.queries_used = o.query_count() - before;
  return verdict;
}

Verdict test_balance_dense(DenseOracle& o, const DenseParams& p, RandomSource& rng) {
  p.check();
  const std::uint64_t before = o.query_count();
  const std::uint64_t s = p.balance_sample_size();
  Verdict verdict;
  verdict.query_budget = s * s;
  const Node n = o.node_count();
  std::vector<Node> slots(s);
  for (auto& x : slots) x = uniform_node(rng, n);

  // Induced graph on the distinct sampled nodes; every slot pair is still paid for.
  std::vector<Node> distinct = slots;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  auto local_id = [&](Node v) { return static_cast<Node>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()); };
  std::vector<std::vector<Neighbor>> adj(distinct.size());
  std::vector<char> recorded;
  const std::size_t dn = distinct.size();
  recorded.assign(dn * dn, 0);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      if (slots[i] == slots[j]) continue;
      const auto answer = to_sign(o.query(slots[i], slots[j]));
      const Node a = local_id(slots[i]), b = local_id(slots[j]);
      auto& seen = recorded[static_cast<std::size_t>(std::min(a, b)) * dn + static_cast<std::size_t>(std::max(a, b))];
      if (!answer || seen) continue;
      seen = 1;
      adj[static_cast<std::size_t>(a)].push_back({b, *answer});
      adj[static_cast<std::size_t>(b)].push_back({a, *answer});
    }
  }
  SignedGraph induced(static_cast<Node>(dn), std::move(adj));
  auto check = is_balanced(induced);
  if (!check.balanced()) {
    Witness w = *check.witness;
    for (auto& v : w.nodes) v = distinct[static_cast<std::size_t>(v)];
    verdict.decision = Decision::Reject;
    verdict.witness = std::move(w);
  }
  verdict.queries_used = o.query_count() - before;
  return verdict;
}

EdgeCountEstimate estimate_edge_count(DenseOracle& o, double eps, double c_e, RandomSource& rng) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const Node n = o.node_count();
  EdgeCountEstimate out;
  if (n < 2) return out;
  const std::uint64_t samples = std::max<std::uint64_t>(1, ceil_to_u64(c_e / (eps * eps)));
  const std::uint64_t before = o.query_count();
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < samples; ++t) {
    const Node u = uniform_node(rng, n);
    Node v = uniform_node(rng, n - 1);
    if (v >= u) ++v;
    hits += o.query(u, v) != PairAnswer::Absent;
  }
  const double nn = static_cast<double>(n);
  out.value = static_cast<double>(hits) / static_cast<double>(samples) * nn * (nn - 1.0) / 2.0;
  out.queries_used = o.query_count() - before;
  return out;
}

FrustrationEstimate frustration_estimate_dense(DenseOracle& o, const DenseParams& p, RandomSource& rng) {
  p.check();
  const Node n = o.node_count();
  const std::uint64_t before = o.query_count();
  const int k = p.cluster_count_bound();
  const double edge_eps = p.eps / 8.0;
  const std::uint64_t edge_samples = p.edge_count_samples(edge_eps);
  const std::uint64_t s = p.clusterability_subset_size();
  const std::uint64_t full_read = pairs(static_cast<std::uint64_t>(n));

  FrustrationEstimate out;
  if (edge_samples + pairs(s) >= full_read) {
    // Reading every pair is cheaper than the sampling plan.
    std::vector<Node> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    const SignedGraph g = query_slot_graph(o, all);
    out.value = static_cast<double>(solve_k_frustration(g, k, p, rng, out.solved_exactly));
    out.witness = is_clusterable(g).witness;
    out.exact_fallback = true;
    out.query_budget = full_read;
    out.queries_used = o.query_count() - before;
    return out;
  }

  const double edges = estimate_edge_count(o, edge_eps, p.c_e, rng).value;
  std::vector<Node> slots(s);
  for (auto& x : slots) x = uniform_node(rng, n);
  const SignedGraph h = query_slot_graph(o, slots);
  const std::size_t violated = solve_k_frustration(h, k, p, rng, out.solved_exactly);
  const double nn = static_cast<double>(n);
  const double scale = nn * nn / (static_cast<double>(s) * static_cast<double>(s - 1));
  const double satisfied = scale * static_cast<double>(h.edge_count() - violated);
  out.value = std::max(0.0, edges - satisfied);
  if (violated > 0) out.witness = observed_bad_cycle(h, slots);
  out.query_budget = edge_samples + pairs(s);
  out.queries_used = o.query_count() - before;
  return out;
}

Verdict test_clusterability_dense(DenseOracle& o, const DenseParams& p, RandomSource& rng) {
  p.check();
  Verdict verdict;
  if (p.eps >= 1.0) return verdict;  // every graph is 1-close to the empty graph
  const auto est = frustration_estimate_dense(o, p, rng);
  const double nn = static_cast<double>(o.node_count());
  verdict.decision = est.value <= p.eps / 2.0 * nn * nn ? Decision::Accept : Decision::Reject;
  verdict.estimate = est.value;
  verdict.queries_used = est.queries_used;
  verdict.query_budget = est.query_budget;
  verdict.exact_fallback = est.exact_fallback;
  if (verdict.decision == Decision::Reject) verdict.witness = est.witness;
  return verdict;
}

namespace {

class LocalSearch {
 public:
  LocalSearch(const SignedGraph& g, int k) : g_(g), n_(g.node_count()), k_(std::max(1, std::min<int>(k, g.node_count()))) {
    pos_.assign(static_cast<std::size_t>(k_), 0);
    neg_.assign(static_cast<std::size_t>(k_), 0);
  }

  void init_from_components() {
    const auto comps = is_clusterable(positive_subgraph(g_));
    const Clustering& c = comps.clusters ? *comps.clusters : Clustering::from_labels(std::vector<int>(static_cast<std::size_t>(n_), 0));
    auto groups = c.members();
    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return groups[a].size() > groups[b].size(); });
    labels_.assign(static_cast<std::size_t>(n_), -1);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const auto& members = groups[order[rank]];
      int target = static_cast<int>(rank);
      if (rank >= static_cast<std::size_t>(k_)) {
        // Surplus component joins the cluster it has the fewest negative edges into.
        std::vector<std::size_t> into(static_cast<std::size_t>(k_), 0);
        for (Node v : members) {
          for (const auto& nb : g_.neighbors(v)) {
            const int l = labels_[static_cast<std::size_t>(nb.node)];
            if (l >= 0 && nb.sign == Sign::Minus) ++into[static_cast<std::size_t>(l)];
          }
        }
        target = static_cast<int>(std::min_element(into.begin(), into.end()) - into.begin());
      }
      for (Node v : members) labels_[static_cast<std::size_t>(v)] = target;
    }
    rebuild_sizes();
  }

  void init_random(RandomSource& rng) {
    labels_.resize(static_cast<std::size_t>(n_));
    for (auto& l : labels_) l = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k_)));
    rebuild_sizes();
  }

  void improve(RandomSource& rng, std::uint64_t max_moves) {
    std::vector<Node> order(static_cast<std::size_t>(n_));
    std::iota(order.begin(), order.end(), 0);
    std::uint64_t moves = 0;
    bool improved = true;
    while (improved && moves < max_moves) {
      improved = false;
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_below(i)]);
      for (Node v : order) {
        if (moves >= max_moves) break;
        ++moves;
        if (try_move(v)) improved = true;
      }
    }
  }

  std::size_t violations() const {
    std::size_t bad = 0;
    for (Node u = 0; u < n_; ++u) {
      for (const auto& nb : g_.neighbors(u)) {
        if (nb.node < u) continue;
        const bool same = labels_[static_cast<std::size_t>(u)] == labels_[static_cast<std::size_t>(nb.node)];
        bad += (nb.sign == Sign::Plus) != same;
      }
    }
    return bad;
  }

  const std::vector<int>& labels() const { return labels_; }

 private:
  void rebuild_sizes() {
    size_.assign(static_cast<std::size_t>(k_), 0);
    for (int l : labels_) ++size_[static_cast<std::size_t>(l)];
  }

  // Cost of v in cluster c is (positive edges leaving c) + (negative edges inside c).
  bool try_move(Node v) {
    int positive_total = 0;
    touched_.clear();
    for (const auto& nb : g_.neighbors(v)) {
      const int l = labels_[static_cast<std::size_t>(nb.node)];
      if (pos_[static_cast<std::size_t>(l)] == 0 && neg_[static_cast<std::size_t>(l)] == 0) touched_.push_back(l);
      if (nb.sign == Sign::Plus) {
        ++pos_[static_cast<std::size_t>(l)];
        ++positive_total;
      } else {
        ++neg_[static_cast<std::size_t>(l)];
      }
    }
    const int current = labels_[static_cast<std::size_t>(v)];
    auto cost = [&](int c) { return positive_total - pos_[static_cast<std::size_t>(c)] + neg_[static_cast<std::size_t>(c)]; };
    int best = current;
    int best_cost = cost(current);
    for (int c : touched_) {
      if (cost(c) < best_cost) {
        best_cost = cost(c);
        best = c;
      }
    }
    if (positive_total < best_cost) {
      // An empty cluster costs exactly the positive degree.
      for (int c = 0; c < k_; ++c) {
        if (size_[static_cast<std::size_t>(c)] == 0 || (c == current && size_[static_cast<std::size_t>(c)] == 1)) {
          if (c != current) {
            best = c;
            best_cost = positive_total;
          }
          break;
        }
      }
    }
    for (int c : touched_) pos_[static_cast<std::size_t>(c)] = neg_[static_cast<std::size_t>(c)] = 0;
    if (best == current) return false;
    --size_[static_cast<std::size_t>(current)];
    ++size_[static_cast<std::size_t>(best)];
    labels_[static_cast<std::size_t>(v)] = best;
    return true;
  }

  const SignedGraph& g_;
  Node n_;
  int k_;
  std::vector<int> labels_;
  std::vector<int> size_;
  std::vector<int> pos_, neg_;
  std::vector<int> touched_;
};

}  // namespace

LocalSearchResult local_search_k_frustration(const SignedGraph& g, int k, RandomSource& rng, int restarts, double move_factor) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  LocalSearchResult best;
  best.violations = std::numeric_limits<std::size_t>::max();
  const double budget = move_factor * static_cast<double>(g.node_count()) * static_cast<double>(k);
  const std::uint64_t max_moves = budget > 1e18 ? std::uint64_t{1} << 60 : static_cast<std::uint64_t>(budget);
  for (int r = 0; r < std::max(1, restarts); ++r) {
    LocalSearch search(g, k);
    if (r == 0) {
      search.init_from_components();
    } else {
      search.init_random(rng);
    }
    search.improve(rng, max_moves);
    const std::size_t v = search.violations();
    if (v < best.violations) {
      best.violations = v;
      best.clustering = Clustering::from_labels(search.labels());
    }
    if (best.violations == 0) break;
  }
  return best;
}

}  // namespace sgt
