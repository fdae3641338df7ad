#pragma once

#include <cstdint>
#include <optional>

#include "sgt/core.hpp"
#include "sgt/oracles.hpp"
#include "sgt/random.hpp"
#include "sgt/verdict.hpp"

namespace sgt {

/// Tuning for the bounded-degree testers. c1..c3 drive the balance walk,
/// c4..c6 the bad-cycle search and c_t the triangle sample.
struct BoundedParams {
  double eps = 0.1;
  double c_t = 10.0;
  double c1 = 8.0, c2 = 2.0, c3 = 4.0;
  double c4 = 8.0, c5 = 2.0, c6 = 4.0;
  double walk_length_eps_exponent = 3.0;
  double walk_length_log_exponent = 1.0;
  int start_attempt_factor = 16;  // start sampling retries = factor * d
  bool allow_exact_fallback = true;

  void check() const;
};

/// Resolved walk schedule for one tester run.
struct WalkParams {
  std::uint64_t starts = 0;
  std::uint64_t walks_per_start = 0;
  std::uint64_t walk_length = 0;
  double query_budget = 0.0;  // planned worst case; may exceed 2^64
  bool exact_fallback = false;
};

/// eps' = eps/(d+1); starts = ceil(c1/eps'); m = ceil(c2 sqrt(N(d+1)) ln N / eps'^3);
/// L = ceil(c3 (ln N)^a / eps'^b).
WalkParams plan_balance_walks(Node n, int d, const BoundedParams& p);

/// starts = ceil(c4/eps); m = ceil(c5 sqrt(N) ln N / eps^2); L = ceil(c6 (ln N)^a / eps^b).
WalkParams plan_clusterability_walks(Node n, int d, const BoundedParams& p);

/// Reads every adjacency list, probing each node until OutOfRange. At most N*d queries.
SignedGraph read_whole_graph(BoundedDegreeOracle& o);

/// One lazy step with exactly one query: draw i in 1..d and move to the
/// i-th neighbor if it exists (and, when restricted, the edge is positive).
Node lazy_walk_step(BoundedDegreeOracle& o, Node v, bool restrict_to_positive, RandomSource& rng);

/// One lazy step on the subdivided graph under the same bound d. Steps
/// from a subdivision node issue no query.
GPrimeNode gprime_walk_step(BoundedDegreeOracle& o, GPrimeNode x, RandomSource& rng);

/// Returns each node of the subdivided graph with probability exactly
/// 1/(4dN) per call, otherwise nullopt. Isolated nodes are never returned.
/// A subdivision node is emitted only when the edge was drawn from its lower
/// endpoint; the degree of the drawn node is probed on demand from index i+1.
std::optional<GPrimeNode> sample_gprime_node(BoundedDegreeOracle& o, RandomSource& rng);

/// One-sided: samples ceil(c_t/eps) nodes and reads two levels of their
/// neighborhoods. queries_used <= samples * (d + d^2).
Verdict test_triangle_bounded(BoundedDegreeOracle& o, TrianglePattern pattern, const BoundedParams& p, RandomSource& rng);

/// One-sided parity-collision walk on the virtual subdivided graph. A
/// collision is spliced into an odd cycle there and contracted to a cycle
/// of the signed graph with an odd number of negative edges.
Verdict test_balance_bounded(BoundedDegreeOracle& o, const BoundedParams& p, RandomSource& rng);

/// m lazy walks of length L on the positive subgraph from s, then a full
/// neighborhood read of every visited node. Queries <= m*L + d*|K|.
std::optional<Witness> badcycle_search(BoundedDegreeOracle& o, Node s, std::uint64_t m, std::uint64_t length,
                                       RandomSource& rng);

/// One-sided: runs badcycle_search from uniform start nodes.
Verdict test_clusterability_bounded(BoundedDegreeOracle& o, const BoundedParams& p, RandomSource& rng);

}  // namespace sgt
