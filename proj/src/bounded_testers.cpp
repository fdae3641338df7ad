#include "sgt/bounded_testers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sgt/exact.hpp"

namespace sgt {
namespace {

std::uint64_t ceil_count(double x) {
  if (!(x < 9.0e18)) return std::uint64_t{1} << 62;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(x - 1e-9)));
}

double log_n(Node n) { return std::log(std::max<double>(2.0, n)); }

int uniform_index(BoundedDegreeOracle& o, RandomSource& rng) {
  return 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(o.degree_bound())));
}

// Degree of u given that index i is known to be occupied. Probes i+1.. until
// the first OutOfRange, never past d.
int probe_degree(BoundedDegreeOracle& o, Node u, int i) {
  int deg = i;
  while (deg < o.degree_bound() && o.query(u, deg + 1)) ++deg;
  return deg;
}

std::vector<Neighbor> read_neighborhood(BoundedDegreeOracle& o, Node v) {
  std::vector<Neighbor> out;
  for (int i = 1; i <= o.degree_bound(); ++i) {
    auto nb = o.query(v, i);
    if (!nb) break;
    out.push_back(*nb);
  }
  return out;
}

Verdict exact_verdict(std::optional<Witness> witness, std::uint64_t queries, std::uint64_t budget) {
  Verdict v;
  v.exact_fallback = true;
  v.queries_used = queries;
  v.query_budget = budget;
  if (witness) {
    v.decision = Decision::Reject;
    v.witness = std::move(witness);
  }
  return v;
}

std::uint64_t saturate(double x) { return x >= 1.8e19 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(x); }

// Reduces an odd closed walk (first node not repeated at the end) to a
// simple odd cycle by cutting out even loops.
std::vector<GPrimeNode> odd_cycle_from_closed_walk(const std::vector<GPrimeNode>& walk) {
  std::vector<GPrimeNode> stack;
  std::unordered_map<std::uint64_t, std::size_t> where;
  auto visit = [&](const GPrimeNode& x) -> bool {
    auto it = where.find(x.key());
    if (it == where.end()) {
      where.emplace(x.key(), stack.size());
      stack.push_back(x);
      return false;
    }
    const std::size_t p = it->second;
    if ((stack.size() - p) % 2 == 1) {
      stack.erase(stack.begin(), stack.begin() + static_cast<std::ptrdiff_t>(p));
      return true;
    }
    for (std::size_t q = p + 1; q < stack.size(); ++q) where.erase(stack[q].key());
    stack.resize(p + 1);
    return false;
  };
  for (const auto& x : walk) {
    if (visit(x)) return stack;
  }
  if (visit(walk.front())) return stack;
  throw std::logic_error("closed walk has even length");
}

// Contracts subdivision nodes: u - w(u,v) - v becomes a positive edge.
Witness contract_gprime_cycle(std::vector<GPrimeNode> cycle) {
  auto first = std::find_if(cycle.begin(), cycle.end(), [](const GPrimeNode& x) { return x.is_original(); });
  std::rotate(cycle.begin(), first, cycle.end());
  Witness w{WitnessKind::OddNegativeCycle, {}, {}};
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (!cycle[i].is_original()) continue;
    w.nodes.push_back(cycle[i].u);
    const auto& next = cycle[(i + 1) % cycle.size()];
    w.signs.push_back(next.is_original() ? Sign::Minus : Sign::Plus);
  }
  return w;
}

struct ParityEntry {
  std::int64_t walk[2] = {-1, -1};
  std::int64_t pos[2] = {0, 0};
};

}  // namespace

void BoundedParams::check() const {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  for (double c : {c_t, c1, c2, c3, c4, c5, c6}) {
    if (!(c > 0.0)) throw std::invalid_argument("bounded constants must be positive");
  }
  if (walk_length_eps_exponent < 0.0 || walk_length_log_exponent < 0.0) throw std::invalid_argument("walk length exponents must be non-negative");
  if (start_attempt_factor < 1) throw std::invalid_argument("start_attempt_factor must be positive");
}

WalkParams plan_balance_walks(Node n, int d, const BoundedParams& p) {
  p.check();
  const double e = p.eps / (d + 1);
  const double ln = log_n(n);
  WalkParams w;
  w.starts = ceil_count(p.c1 / e);
  w.walks_per_start = ceil_count(p.c2 * std::sqrt(static_cast<double>(n) * (d + 1)) * ln / (e * e * e));
  w.walk_length = ceil_count(p.c3 * std::pow(ln, p.walk_length_log_exponent) / std::pow(e, p.walk_length_eps_exponent));
  const double per_start = static_cast<double>(p.start_attempt_factor) * d * d +
                           static_cast<double>(w.walks_per_start) * static_cast<double>(w.walk_length);
  w.query_budget = static_cast<double>(w.starts) * per_start;
  w.exact_fallback = p.allow_exact_fallback && (p.eps >= 1.0 || w.query_budget >= static_cast<double>(n) * d);
  return w;
}

WalkParams plan_clusterability_walks(Node n, int d, const BoundedParams& p) {
  p.check();
  const double ln = log_n(n);
  WalkParams w;
  w.starts = ceil_count(p.c4 / p.eps);
  w.walks_per_start = ceil_count(p.c5 * std::sqrt(static_cast<double>(n)) * ln / (p.eps * p.eps));
  w.walk_length = ceil_count(p.c6 * std::pow(ln, p.walk_length_log_exponent) / std::pow(p.eps, p.walk_length_eps_exponent));
  const double steps = static_cast<double>(w.walks_per_start) * static_cast<double>(w.walk_length);
  w.query_budget = static_cast<double>(w.starts) * (steps + d * std::min(steps + 1.0, static_cast<double>(n)));
  w.exact_fallback = p.allow_exact_fallback && (p.eps >= 1.0 || w.query_budget >= static_cast<double>(n) * d);
  return w;
}

SignedGraph read_whole_graph(BoundedDegreeOracle& o) {
  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(o.node_count()));
  for (Node v = 0; v < o.node_count(); ++v) adj[static_cast<std::size_t>(v)] = read_neighborhood(o, v);
  return SignedGraph(o.node_count(), std::move(adj), o.degree_bound());
}

Node lazy_walk_step(BoundedDegreeOracle& o, Node v, bool restrict_to_positive, RandomSource& rng) {
  const auto nb = o.query(v, uniform_index(o, rng));
  if (!nb || (restrict_to_positive && nb->sign == Sign::Minus)) return v;
  return nb->node;
}

GPrimeNode gprime_walk_step(BoundedDegreeOracle& o, GPrimeNode x, RandomSource& rng) {
  if (x.is_original()) {
    const auto nb = o.query(x.u, uniform_index(o, rng));
    if (!nb) return x;
    return nb->sign == Sign::Minus ? GPrimeNode::original(nb->node) : GPrimeNode::subdivision(x.u, nb->node);
  }
  // Degree 2 under bound d: move with probability 2/d, to either endpoint.
  const auto r = rng.uniform_below(static_cast<std::uint64_t>(o.degree_bound()));
  if (r == 0) return GPrimeNode::original(x.u);
  if (r == 1) return GPrimeNode::original(x.v);
  return x;
}

std::optional<GPrimeNode> sample_gprime_node(BoundedDegreeOracle& o, RandomSource& rng) {
  const Node u = static_cast<Node>(rng.uniform_below(static_cast<std::uint64_t>(o.node_count())));
  const int i = uniform_index(o, rng);
  const auto nb = o.query(u, i);
  if (!nb) return std::nullopt;
  if (nb->sign == Sign::Minus || u > nb->node) {
    const int deg = probe_degree(o, u, i);
    if (rng.bernoulli(1.0 / (4.0 * deg))) return GPrimeNode::original(u);
    return std::nullopt;
  }
  if (rng.bernoulli(0.25)) return GPrimeNode::subdivision(u, nb->node);
  const int deg = probe_degree(o, u, i);
  if (rng.bernoulli(1.0 / (3.0 * deg))) return GPrimeNode::original(u);
  return std::nullopt;
}

Verdict test_triangle_bounded(BoundedDegreeOracle& o, TrianglePattern pattern, const BoundedParams& p, RandomSource& rng) {
  p.check();
  const std::uint64_t before = o.query_count();
  const Node n = o.node_count();
  const int d = o.degree_bound();
  const std::uint64_t samples = ceil_count(p.c_t / p.eps);
  const double budget = static_cast<double>(samples) * (d + static_cast<double>(d) * d);
  if (p.allow_exact_fallback && (p.eps >= 1.0 || budget >= static_cast<double>(n) * d)) {
    const SignedGraph g = read_whole_graph(o);
    return exact_verdict(find_signed_triangle(g, pattern), o.query_count() - before, static_cast<std::uint64_t>(n) * d);
  }
  Verdict verdict;
  verdict.query_budget = saturate(budget);
  for (std::uint64_t t = 0; t < samples && verdict.decision == Decision::Accept; ++t) {
    const Node v = static_cast<Node>(rng.uniform_below(static_cast<std::uint64_t>(n)));
    const auto around = read_neighborhood(o, v);
    for (const auto& a : around) {
      for (const auto& ab : read_neighborhood(o, a.node)) {
        if (ab.node == v) continue;
        auto b = std::find_if(around.begin(), around.end(), [&](const Neighbor& x) { return x.node == ab.node; });
        if (b == around.end() || !pattern.matches(a.sign, ab.sign, b->sign)) continue;
        verdict.decision = Decision::Reject;
        verdict.witness = Witness{WitnessKind::SignedTriangle, {v, a.node, ab.node}, {a.sign, ab.sign, b->sign}};
        break;
      }
      if (verdict.witness) break;
    }
  }
  verdict.queries_used = o.query_count() - before;
  return verdict;
}

Verdict test_balance_bounded(BoundedDegreeOracle& o, const BoundedParams& p, RandomSource& rng) {
  const std::uint64_t before = o.query_count();
  const Node n = o.node_count();
  const int d = o.degree_bound();
  const WalkParams plan = plan_balance_walks(n, d, p);
  if (plan.exact_fallback) {
    const SignedGraph g = read_whole_graph(o);
    return exact_verdict(is_balanced(g).witness, o.query_count() - before, static_cast<std::uint64_t>(n) * d);
  }
  Verdict verdict;
  verdict.query_budget = saturate(plan.query_budget);
  const int attempts = p.start_attempt_factor * d;

  for (std::uint64_t it = 0; it < plan.starts; ++it) {
    std::optional<GPrimeNode> start;
    for (int a = 0; a < attempts && !start; ++a) start = sample_gprime_node(o, rng);
    if (!start) continue;

    // Each walk keeps only its moves, so a node's index is its path parity.
    std::vector<std::vector<GPrimeNode>> walks;
    std::unordered_map<std::uint64_t, ParityEntry> table;
    table[start->key()].walk[0] = 0;
    std::optional<std::pair<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>>> hit;
    for (std::uint64_t w = 0; w < plan.walks_per_start && !hit; ++w) {
      auto& seq = walks.emplace_back();
      seq.push_back(*start);
      GPrimeNode x = *start;
      for (std::uint64_t step = 0; step < plan.walk_length; ++step) {
        const GPrimeNode y = gprime_walk_step(o, x, rng);
        if (y == x) continue;
        x = y;
        seq.push_back(x);
        const auto pos = static_cast<std::int64_t>(seq.size() - 1);
        const int parity = static_cast<int>(pos & 1);
        auto& entry = table[x.key()];
        if (entry.walk[parity ^ 1] >= 0) {
          hit = {{entry.walk[parity ^ 1], entry.pos[parity ^ 1]}, {static_cast<std::int64_t>(w), pos}};
          break;
        }
        if (entry.walk[parity] < 0) {
          entry.walk[parity] = static_cast<std::int64_t>(w);
          entry.pos[parity] = pos;
        }
      }
    }
    if (hit) {
      const auto& a = walks[static_cast<std::size_t>(hit->first.first)];
      const auto& b = walks[static_cast<std::size_t>(hit->second.first)];
      std::vector<GPrimeNode> closed(a.begin(), a.begin() + hit->first.second + 1);
      for (std::int64_t j = hit->second.second - 1; j >= 1; --j) closed.push_back(b[static_cast<std::size_t>(j)]);
      verdict.decision = Decision::Reject;
      verdict.witness = contract_gprime_cycle(odd_cycle_from_closed_walk(closed));
      break;
    }
  }
  verdict.queries_used = o.query_count() - before;
  return verdict;
}

std::optional<Witness> badcycle_search(BoundedDegreeOracle& o, Node s, std::uint64_t m, std::uint64_t length,
                                       RandomSource& rng) {
  struct Visit {
    Node parent;
    std::int64_t depth;
  };
  std::unordered_map<Node, Visit> tree;
  std::vector<Node> order;
  tree.emplace(s, Visit{s, 0});
  order.push_back(s);
  for (std::uint64_t w = 0; w < m; ++w) {
    Node v = s;
    for (std::uint64_t step = 0; step < length; ++step) {
      const Node next = lazy_walk_step(o, v, true, rng);
      if (next != v && tree.try_emplace(next, Visit{v, tree.at(v).depth + 1}).second) order.push_back(next);
      v = next;
    }
  }
  for (Node u : order) {
    for (const auto& nb : read_neighborhood(o, u)) {
      if (nb.sign != Sign::Minus || !tree.contains(nb.node)) continue;
      // Tree path u -> lca -> v, closed by the negative edge v-u.
      std::vector<Node> up{u}, down{nb.node};
      Node a = u, b = nb.node;
      while (tree.at(a).depth > tree.at(b).depth) up.push_back(a = tree.at(a).parent);
      while (tree.at(b).depth > tree.at(a).depth) down.push_back(b = tree.at(b).parent);
      while (a != b) {
        up.push_back(a = tree.at(a).parent);
        down.push_back(b = tree.at(b).parent);
      }
      down.pop_back();
      Witness w{WitnessKind::BadCycle, std::move(up), {}};
      w.nodes.insert(w.nodes.end(), down.rbegin(), down.rend());
      w.signs.assign(w.nodes.size(), Sign::Plus);
      w.signs.back() = Sign::Minus;
      return w;
    }
  }
  return std::nullopt;
}

Verdict test_clusterability_bounded(BoundedDegreeOracle& o, const BoundedParams& p, RandomSource& rng) {
  const std::uint64_t before = o.query_count();
  const Node n = o.node_count();
  const int d = o.degree_bound();
  const WalkParams plan = plan_clusterability_walks(n, d, p);
  if (plan.exact_fallback) {
    const SignedGraph g = read_whole_graph(o);
    return exact_verdict(is_clusterable(g).witness, o.query_count() - before, static_cast<std::uint64_t>(n) * d);
  }
  Verdict verdict;
  verdict.query_budget = saturate(plan.query_budget);
  for (std::uint64_t it = 0; it < plan.starts; ++it) {
    const Node s = static_cast<Node>(rng.uniform_below(static_cast<std::uint64_t>(n)));
    if (auto w = badcycle_search(o, s, plan.walks_per_start, plan.walk_length, rng)) {
      verdict.decision = Decision::Reject;
      verdict.witness = std::move(w);
      break;
    }
  }
  verdict.queries_used = o.query_count() - before;
  return verdict;
}

}  // namespace sgt
