#include "sgt/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "sgt/random.hpp"

namespace sgt {
namespace {

using json = nlohmann::json;

constexpr std::size_t kTriangleExactEdgeLimit = 40;

std::uint64_t pair_key(Node a, Node b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

class EdgeBuilder {
 public:
  explicit EdgeBuilder(Node n) : degree_(static_cast<std::size_t>(n), 0) {}

  bool has(Node a, Node b) const { return keys_.contains(pair_key(a, b)); }
  int degree(Node v) const { return degree_[static_cast<std::size_t>(v)]; }

  void add(Node a, Node b, Sign s) {
    keys_.insert(pair_key(a, b));
    edges_.push_back({a, b, s});
    ++degree_[static_cast<std::size_t>(a)];
    ++degree_[static_cast<std::size_t>(b)];
  }

  const std::vector<SignedEdge>& edges() const { return edges_; }

 private:
  std::unordered_set<std::uint64_t> keys_;
  std::vector<SignedEdge> edges_;
  std::vector<int> degree_;
};

// Randomly pairs stubs into new edges, never repeating a pair or joining a
// node to itself. Restarts when stuck and keeps the attempt with the fewest
// unpaired stubs. Returns that count.
std::size_t pair_stubs(const std::vector<Node>& stubs, const std::function<bool(Node, Node)>& allowed, Sign sign,
                       EdgeBuilder& builder, RandomSource& rng) {
  std::vector<std::pair<Node, Node>> best;
  std::size_t best_left = stubs.size() + 1;
  for (int attempt = 0; attempt < 20 && best_left > 1; ++attempt) {
    std::vector<Node> left = stubs;
    std::vector<std::pair<Node, Node>> made;
    std::unordered_set<std::uint64_t> fresh;
    auto ok = [&](Node a, Node b) { return a != b && allowed(a, b) && !builder.has(a, b) && !fresh.contains(pair_key(a, b)); };
    auto take = [&](std::size_t i, std::size_t j) {
      made.emplace_back(left[i], left[j]);
      fresh.insert(pair_key(left[i], left[j]));
      if (i < j) std::swap(i, j);
      left[i] = left.back();
      left.pop_back();
      left[j] = left.back();
      left.pop_back();
    };
    std::size_t fails = 0;
    while (left.size() >= 2) {
      const std::size_t i = rng.uniform_below(left.size());
      std::size_t j = rng.uniform_below(left.size() - 1);
      if (j >= i) ++j;
      if (ok(left[i], left[j])) {
        take(i, j);
        fails = 0;
        continue;
      }
      if (++fails < 50 * left.size() + 100) continue;
      bool found = false;
      for (std::size_t a = 0; a < left.size() && !found; ++a) {
        for (std::size_t b = a + 1; b < left.size() && !found; ++b) {
          if (ok(left[a], left[b])) {
            take(a, b);
            found = true;
          }
        }
      }
      if (!found) break;
      fails = 0;
    }
    if (left.size() < best_left) {
      best_left = left.size();
      best = std::move(made);
    }
  }
  for (const auto& [a, b] : best) builder.add(a, b, sign);
  return best_left;
}

std::vector<Node> repeat_nodes(const std::vector<Node>& nodes, int times) {
  std::vector<Node> stubs;
  stubs.reserve(nodes.size() * static_cast<std::size_t>(std::max(0, times)));
  for (Node v : nodes) {
    for (int t = 0; t < times; ++t) stubs.push_back(v);
  }
  return stubs;
}

void add_clique(const std::vector<Node>& nodes, Sign s, EdgeBuilder& b) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) b.add(nodes[i], nodes[j], s);
  }
}

// Random `degree`-regular-ish graph inside `nodes`; a clique once degree >= |nodes|-1.
void add_regular(const std::vector<Node>& nodes, int degree, Sign s, EdgeBuilder& b, RandomSource& rng) {
  if (degree <= 0 || nodes.size() < 2) return;
  if (static_cast<std::size_t>(degree) + 1 >= nodes.size()) {
    add_clique(nodes, s, b);
    return;
  }
  pair_stubs(repeat_nodes(nodes, degree), [](Node, Node) { return true; }, s, b, rng);
}

// Negative edges between different groups, `degree` per node where possible.
void add_cross(const std::vector<std::vector<Node>>& groups, const std::vector<int>& group_of, int degree, EdgeBuilder& b,
               RandomSource& rng) {
  if (degree <= 0 || groups.size() < 2) return;
  const std::size_t n = group_of.size();
  std::size_t smallest = n;
  for (const auto& g : groups) smallest = std::min(smallest, g.size());
  if (static_cast<std::size_t>(degree) >= n - smallest) {
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      for (std::size_t gj = gi + 1; gj < groups.size(); ++gj) {
        for (Node u : groups[gi]) {
          for (Node v : groups[gj]) b.add(u, v, Sign::Minus);
        }
      }
    }
    return;
  }
  std::vector<Node> all(n);
  std::iota(all.begin(), all.end(), 0);
  pair_stubs(repeat_nodes(all, degree),
             [&](Node u, Node v) { return group_of[static_cast<std::size_t>(u)] != group_of[static_cast<std::size_t>(v)]; },
             Sign::Minus, b, rng);
}

int smallest_size(const std::vector<std::vector<Node>>& groups) {
  std::size_t s = groups.front().size();
  for (const auto& g : groups) s = std::min(s, g.size());
  return static_cast<int>(s);
}

std::vector<std::vector<Node>> split_groups(Node n, int k, std::vector<int>& group_of) {
  std::vector<std::vector<Node>> groups(static_cast<std::size_t>(k));
  group_of.assign(static_cast<std::size_t>(n), 0);
  for (Node v = 0; v < n; ++v) {
    // Contiguous blocks whose sizes differ by at most one.
    const int g = static_cast<int>(static_cast<std::int64_t>(v) * k / n);
    groups[static_cast<std::size_t>(g)].push_back(v);
    group_of[static_cast<std::size_t>(v)] = g;
  }
  return groups;
}

DistanceCertificate make_cert(Property p, Model model, int d, Node n, std::size_t edits, bool exact, std::string provenance,
                              std::optional<TrianglePattern> pattern = std::nullopt) {
  DistanceCertificate c;
  c.property = p;
  c.model = model;
  c.d = model == Model::Bounded ? d : 0;
  c.pattern = pattern;
  c.edits = edits;
  c.epsilon = normalized_distance(edits, model, n, d);
  c.exact = exact;
  c.provenance = std::move(provenance);
  return c;
}

bool is_dense_family(const GenSpec& s) {
  return s.family == Family::PlantedTriangles ||
         (s.d >= s.n - 1 && (s.family == Family::ClusterableCommunities || s.family == Family::BalancedTwoSide));
}

std::vector<std::vector<Node>> connected_components(const SignedGraph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.node_count()), -1);
  std::vector<std::vector<Node>> out;
  for (Node s = 0; s < g.node_count(); ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    auto& members = out.emplace_back();
    const int id = static_cast<int>(out.size() - 1);
    comp[static_cast<std::size_t>(s)] = id;
    members.push_back(s);
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto& nb : g.neighbors(members[head])) {
        if (comp[static_cast<std::size_t>(nb.node)] < 0) {
          comp[static_cast<std::size_t>(nb.node)] = id;
          members.push_back(nb.node);
        }
      }
    }
  }
  return out;
}

SignedGraph induced(const SignedGraph& g, const std::vector<Node>& nodes) {
  std::vector<Node> local(static_cast<std::size_t>(g.node_count()), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[static_cast<std::size_t>(nodes[i])] = static_cast<Node>(i);
  std::vector<std::vector<Neighbor>> adj(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& nb : g.neighbors(nodes[i])) {
      const Node j = local[static_cast<std::size_t>(nb.node)];
      if (j >= 0) adj[i].push_back({j, nb.sign});
    }
  }
  return SignedGraph(static_cast<Node>(nodes.size()), std::move(adj));
}

SignedGraph without_edges(const SignedGraph& g, const std::unordered_set<std::uint64_t>& removed) {
  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(g.node_count()));
  for (Node u = 0; u < g.node_count(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (!removed.contains(pair_key(u, nb.node))) adj[static_cast<std::size_t>(u)].push_back(nb);
    }
  }
  return SignedGraph(g.node_count(), std::move(adj));
}

template <typename FindWitness>
std::size_t cycle_packing(const SignedGraph& g, FindWitness find) {
  std::size_t packed = 0;
  SignedGraph rest = g;
  std::unordered_set<std::uint64_t> removed;
  while (auto w = find(rest)) {
    ++packed;
    for (std::size_t i = 0; i < w->nodes.size(); ++i) removed.insert(pair_key(w->nodes[i], w->nodes[(i + 1) % w->nodes.size()]));
    rest = without_edges(g, removed);
  }
  return packed;
}

std::optional<std::size_t> exact_component_sum(const SignedGraph& g, Property property, std::optional<TrianglePattern> pattern) {
  std::size_t total = 0;
  for (const auto& nodes : connected_components(g)) {
    if (nodes.size() < 3) continue;
    const SignedGraph h = induced(g, nodes);
    try {
      switch (property) {
        case Property::Balance:
          if (is_balanced(h).balanced()) continue;
          if (h.node_count() > kFrustrationNodeLimit) return std::nullopt;
          total += frustration_index(h);
          break;
        case Property::Clusterable:
          if (is_clusterable(h).clusterable()) continue;
          if (h.node_count() > kWeakFrustrationNodeLimit) return std::nullopt;
          total += weak_frustration_index(h);
          break;
        case Property::TriangleFree:
          if (!find_signed_triangle(h, *pattern)) continue;
          if (h.edge_count() > kTriangleExactEdgeLimit) return std::nullopt;
          total += triangle_free_distance(h, *pattern);
          break;
        case Property::KClusterable:
          return std::nullopt;
      }
    } catch (const SizeLimitExceeded&) {
      return std::nullopt;
    }
  }
  return total;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::ClusterableCommunities: return "clusterable-communities";
    case Family::BalancedTwoSide: return "balanced-two-side";
    case Family::AllNegativeRegular: return "all-negative-regular";
    case Family::DisjointBadTriangles: return "disjoint-bad-triangles";
    case Family::PlantedNegativeMatching: return "planted-negative-matching";
    case Family::PlantedTriangles: return "planted-triangles";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  for (Family f : {Family::ClusterableCommunities, Family::BalancedTwoSide, Family::AllNegativeRegular,
                   Family::DisjointBadTriangles, Family::PlantedNegativeMatching, Family::PlantedTriangles}) {
    if (to_string(f) == text) return f;
  }
  throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

void GenSpec::check() const {
  auto fail = [&](const std::string& why) { throw std::invalid_argument(to_string(family) + ": " + why); };
  if (n < 1) fail("n must be at least 1");
  if (d < 1) fail("d must be positive");
  if (!(planted_fraction >= 0.0)) fail("planted_fraction must be non-negative");
  switch (family) {
    case Family::ClusterableCommunities:
      if (k < 1 || k > n) fail("k must lie in 1..n");
      break;
    case Family::PlantedNegativeMatching:
      if (k < 1 || k > n) fail("k must lie in 1..n");
      if (d < 2) fail("d must be at least 2");
      if (std::floor(planted_fraction * d * n) > n / 2) fail("planted matching larger than n/2");
      break;
    case Family::BalancedTwoSide:
      if (n < 2) fail("n must be at least 2");
      break;
    case Family::AllNegativeRegular:
      if (d >= n) fail("d must be below n");
      break;
    case Family::DisjointBadTriangles:
      if (d < 2) fail("d must be at least 2");
      break;
    case Family::PlantedTriangles: {
      if (n < 3) fail("n must be at least 3");
      (void)TrianglePattern::parse(pattern);
      const double t = std::ceil(planted_fraction * static_cast<double>(n) * n);
      if (3.0 * t > static_cast<double>(n) * (n - 1) / 2.0) fail("too many triangles for edge-disjoint placement");
      break;
    }
  }
}

GeneratedInstance generate(const GenSpec& spec) {
  spec.check();
  RandomSource rng(spec.seed);
  const Node n = spec.n;
  const int d = spec.d;
  EdgeBuilder b(n);
  InstanceMetadata meta;
  meta.spec = spec;
  const bool dense = is_dense_family(spec);
  const Model model = dense ? Model::Dense : Model::Bounded;
  std::vector<int> group_of;

  switch (spec.family) {
    case Family::ClusterableCommunities:
    case Family::PlantedNegativeMatching: {
      auto groups = split_groups(n, spec.k, group_of);
      const int smallest = smallest_size(groups);
      const bool planted = spec.family == Family::PlantedNegativeMatching;
      int positive = std::min((d + 1) / 2, smallest - 1);
      if (dense) positive = n;
      int cross = planted ? d - std::min((d + 1) / 2, smallest - 1) - 1 : d - std::min((d + 1) / 2, smallest - 1);
      if (dense) cross = n;
      for (const auto& g : groups) add_regular(g, positive, Sign::Plus, b, rng);
      add_cross(groups, group_of, cross, b, rng);
      for (const auto& g : groups) meta.group_sizes.push_back(static_cast<int>(g.size()));
      if (planted) {
        const auto target = static_cast<std::size_t>(std::floor(spec.planted_fraction * d * n));
        std::vector<Node> free;
        for (Node v = 0; v < n; ++v) {
          if (b.degree(v) < d) free.push_back(v);
        }
        for (std::size_t i = free.size(); i > 1; --i) std::swap(free[i - 1], free[rng.uniform_below(i)]);
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < free.size() && meta.planted < target; ++i) {
          const Node u = free[i];
          if (used[static_cast<std::size_t>(u)]) continue;
          for (std::size_t j = i + 1; j < free.size(); ++j) {
            const Node v = free[j];
            if (used[static_cast<std::size_t>(v)] || group_of[static_cast<std::size_t>(u)] != group_of[static_cast<std::size_t>(v)] ||
                b.has(u, v)) {
              continue;
            }
            b.add(u, v, Sign::Minus);
            used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
            ++meta.planted;
            break;
          }
        }
        if (meta.planted < target) throw std::invalid_argument("planted-negative-matching: cannot place the requested matching");
        meta.notes.push_back("far-ness is bounded below by an edge-disjoint bad-cycle packing, see certify");
      } else {
        meta.certificates.push_back(make_cert(Property::Clusterable, model, d, n, 0, true, "construction"));
      }
      break;
    }
    case Family::BalancedTwoSide: {
      auto sides = split_groups(n, 2, group_of);
      const int smallest = smallest_size(sides);
      const int positive = dense ? n : std::min((d + 1) / 2, smallest - 1);
      const int cross = dense ? n : d - positive;
      for (const auto& s : sides) add_regular(s, positive, Sign::Plus, b, rng);
      add_cross(sides, group_of, cross, b, rng);
      for (const auto& s : sides) meta.group_sizes.push_back(static_cast<int>(s.size()));
      meta.certificates.push_back(make_cert(Property::Balance, model, d, n, 0, true, "construction"));
      meta.certificates.push_back(make_cert(Property::Clusterable, model, d, n, 0, true, "construction"));
      meta.certificates.push_back(make_cert(Property::TriangleFree, model, d, n, 0, true, "construction", TrianglePattern(1)));
      meta.certificates.push_back(make_cert(Property::TriangleFree, model, d, n, 0, true, "construction", TrianglePattern(3)));
      break;
    }
    case Family::AllNegativeRegular: {
      std::vector<Node> all(static_cast<std::size_t>(n));
      std::iota(all.begin(), all.end(), 0);
      add_regular(all, d, Sign::Minus, b, rng);
      meta.notes.push_back("far from balance is construction-backed: random 3-regular graphs have max-cut at most 0.94 m whp");
      break;
    }
    case Family::DisjointBadTriangles: {
      const Node t = n / 3;
      for (Node i = 0; i < t; ++i) {
        b.add(3 * i, 3 * i + 1, Sign::Plus);
        b.add(3 * i + 1, 3 * i + 2, Sign::Plus);
        b.add(3 * i, 3 * i + 2, Sign::Minus);
      }
      meta.planted = static_cast<std::size_t>(t);
      for (Property p : {Property::Balance, Property::Clusterable}) {
        meta.certificates.push_back(make_cert(p, model, d, n, static_cast<std::size_t>(t), true, "construction"));
      }
      meta.certificates.push_back(
          make_cert(Property::TriangleFree, model, d, n, static_cast<std::size_t>(t), true, "construction", TrianglePattern(1)));
      break;
    }
    case Family::PlantedTriangles: {
      const TrianglePattern pattern = TrianglePattern::parse(spec.pattern);
      const auto target = static_cast<std::size_t>(std::ceil(spec.planted_fraction * static_cast<double>(n) * n));
      const std::size_t max_attempts = 1000 * target + 1000;
      for (std::size_t attempt = 0; meta.planted < target && attempt < max_attempts; ++attempt) {
        Node x[3];
        for (auto& v : x) v = static_cast<Node>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        if (x[0] == x[1] || x[1] == x[2] || x[0] == x[2] || b.has(x[0], x[1]) || b.has(x[1], x[2]) || b.has(x[0], x[2])) continue;
        std::vector<Sign> signs{Sign::Plus, Sign::Plus, Sign::Plus};
        for (int m = 0; m < pattern.minus_count(); ++m) signs[static_cast<std::size_t>(m)] = Sign::Minus;
        for (std::size_t i = signs.size(); i > 1; --i) std::swap(signs[i - 1], signs[rng.uniform_below(i)]);
        b.add(x[0], x[1], signs[0]);
        b.add(x[1], x[2], signs[1]);
        b.add(x[0], x[2], signs[2]);
        ++meta.planted;
      }
      if (meta.planted < target) throw std::invalid_argument("planted-triangles: could not place edge-disjoint triangles");
      meta.certificates.push_back(make_cert(Property::TriangleFree, model, d, n, meta.planted, false, "construction", pattern));
      break;
    }
  }

  std::optional<int> bound;
  if (!dense) bound = d;
  GeneratedInstance out{SignedGraph::from_edges(n, b.edges(), bound), {}};
  meta.edge_count = out.graph.edge_count();
  meta.max_degree = out.graph.max_degree();
  meta.min_degree = meta.max_degree;
  for (Node v = 0; v < n; ++v) meta.min_degree = std::min(meta.min_degree, out.graph.degree(v));
  meta.regular = meta.min_degree == meta.max_degree;
  out.metadata = std::move(meta);
  return out;
}

std::size_t odd_cycle_packing(const SignedGraph& g) {
  return cycle_packing(g, [](const SignedGraph& h) { return is_balanced(h).witness; });
}

std::size_t bad_cycle_packing(const SignedGraph& g) {
  return cycle_packing(g, [](const SignedGraph& h) { return is_clusterable(h).witness; });
}

std::size_t triangle_packing(const SignedGraph& g, TrianglePattern pattern) {
  std::unordered_set<std::uint64_t> used;
  std::size_t packed = 0;
  for (Node a = 0; a < g.node_count(); ++a) {
    for (const auto& ab : g.neighbors(a)) {
      const Node b = ab.node;
      if (b <= a) continue;
      for (const auto& bc : g.neighbors(b)) {
        const Node c = bc.node;
        if (c <= b) continue;
        const auto ca = g.edge_sign(c, a);
        if (!ca || !pattern.matches(ab.sign, bc.sign, *ca)) continue;
        if (used.contains(pair_key(a, b)) || used.contains(pair_key(b, c)) || used.contains(pair_key(a, c))) continue;
        used.insert(pair_key(a, b));
        used.insert(pair_key(b, c));
        used.insert(pair_key(a, c));
        ++packed;
        break;
      }
    }
  }
  return packed;
}

std::optional<DistanceCertificate> certify(const SignedGraph& g, Property property, Model model, int d, int k,
                                           std::optional<TrianglePattern> pattern, const InstanceMetadata* meta) {
  if (property == Property::TriangleFree && !pattern) throw std::invalid_argument("triangle certificate needs a pattern");
  if (model == Model::Bounded && d < 1) throw std::invalid_argument("bounded certificate needs d >= 1");
  const Node n = g.node_count();
  auto finish = [&](std::size_t edits, bool exact, std::string provenance) {
    DistanceCertificate c = make_cert(property, model, d, n, edits, exact, std::move(provenance), pattern);
    c.k = property == Property::KClusterable ? k : 0;
    return c;
  };

  if (property == Property::KClusterable) {
    if (k < 1) throw std::invalid_argument("k-clusterability certificate needs k >= 1");
    try {
      return finish(k_frustration_index(g, k), true, "exact");
    } catch (const SizeLimitExceeded&) {
      return std::nullopt;
    }
  }
  if (auto exact = exact_component_sum(g, property, pattern)) return finish(*exact, true, "exact");

  std::size_t bound = 0;
  switch (property) {
    case Property::Balance: bound = odd_cycle_packing(g); break;
    case Property::Clusterable: bound = bad_cycle_packing(g); break;
    case Property::TriangleFree: bound = triangle_packing(g, *pattern); break;
    case Property::KClusterable: break;
  }
  std::string provenance = "packing";
  bool exact = false;
  if (meta) {
    for (const auto& c : meta->certificates) {
      if (c.property != property || c.provenance != "construction" || c.pattern != pattern) continue;
      if (c.exact) {
        bound = c.edits;
        exact = true;
        provenance = "construction";
        break;
      }
      if (c.edits > bound) {
        bound = c.edits;
        provenance = "construction";
      }
    }
  }
  if (bound == 0 && !exact) return std::nullopt;
  return finish(bound, exact, provenance);
}

json to_json(const GenSpec& spec) {
  return json{{"family", to_string(spec.family)}, {"n", spec.n},       {"d", spec.d},
              {"k", spec.k},                      {"planted_fraction", spec.planted_fraction},
              {"seed", spec.seed},                {"pattern", spec.pattern}};
}

GenSpec gen_spec_from_json(const json& j) {
  GenSpec s;
  s.family = parse_family(j.at("family").get<std::string>());
  s.n = j.value("n", s.n);
  s.d = j.value("d", s.d);
  s.k = j.value("k", s.k);
  s.planted_fraction = j.value("planted_fraction", s.planted_fraction);
  s.seed = j.value("seed", s.seed);
  s.pattern = j.value("pattern", s.pattern);
  return s;
}

json to_json(const DistanceCertificate& c) {
  json j{{"property", to_string(c.property)}, {"model", to_string(c.model)}, {"edits", c.edits},
         {"epsilon", c.epsilon},              {"exact", c.exact},            {"provenance", c.provenance}};
  if (c.model == Model::Bounded) j["d"] = c.d;
  if (c.property == Property::KClusterable) j["k"] = c.k;
  if (c.pattern) j["pattern"] = c.pattern->str();
  return j;
}

json to_json(const InstanceMetadata& meta) {
  json certs = json::array();
  for (const auto& c : meta.certificates) certs.push_back(to_json(c));
  return json{{"spec", to_json(meta.spec)},     {"edge_count", meta.edge_count}, {"min_degree", meta.min_degree},
              {"max_degree", meta.max_degree},  {"regular", meta.regular},       {"planted", meta.planted},
              {"group_sizes", meta.group_sizes}, {"certificates", certs},        {"notes", meta.notes}};
}

}  // namespace sgt
