#pragma once

#include <cstdint>
#include <optional>

#include "sgt/core.hpp"
#include "sgt/oracles.hpp"
#include "sgt/random.hpp"
#include "sgt/verdict.hpp"

namespace sgt {

/// Tuning for the dense-model testers. The constants are engineering
/// defaults, not derived bounds.
struct DenseParams {
  double eps = 0.1;
  std::optional<std::uint64_t> triple_samples;  // default ceil(10 / eps^3)
  double c_b = 20.0;                            // balance sample size factor
  double c_e = 8.0;                             // edge-count sample factor
  double c_c = 6.0;                             // clusterability subset factor
  std::uint64_t subset_cap = 1000;              // max sampled nodes for clusterability
  int local_search_restarts = 10;
  double local_search_move_factor = 200.0;      // moves <= factor * s * k

  void check() const;
  std::uint64_t resolved_triple_samples() const;
  std::uint64_t balance_sample_size() const;
  std::uint64_t edge_count_samples(double error_eps) const;
  int cluster_count_bound() const;              // k = ceil(8 / eps)
  std::uint64_t clusterability_subset_size() const;
};

/// One-sided: rejects iff a sampled triple spans a `pattern` triangle.
/// queries_used <= 3 * triple_samples.
Verdict test_triangle_dense(DenseOracle& o, TrianglePattern pattern, const DenseParams& p, RandomSource& rng);

/// One-sided: samples s nodes with replacement, queries every sampled pair
/// of distinct nodes, and rejects iff the induced graph is unbalanced.
/// queries_used <= s^2.
Verdict test_balance_dense(DenseOracle& o, const DenseParams& p, RandomSource& rng);

struct EdgeCountEstimate {
  double value = 0.0;
  std::uint64_t queries_used = 0;
};

/// Hit fraction over ceil(c_e / eps^2) uniform off-diagonal pairs, scaled by N(N-1)/2.
EdgeCountEstimate estimate_edge_count(DenseOracle& o, double eps, double c_e, RandomSource& rng);

struct FrustrationEstimate {
  double value = 0.0;             // estimated ceil(8/eps)-frustration, in edges
  std::uint64_t queries_used = 0;
  std::uint64_t query_budget = 0;
  bool exact_fallback = false;
  bool solved_exactly = false;    // sampled subproblem solved by enumeration
  std::optional<Witness> witness; // bad cycle among the pairs read, if any
};

/// Additive estimate of the weak frustration index via the k-frustration
/// identity |E| - max satisfiable constraints with k = ceil(8/eps).
/// When the sampling plan would cost at least N(N-1)/2 queries, every
/// pair is read instead.
FrustrationEstimate frustration_estimate_dense(DenseOracle& o, const DenseParams& p, RandomSource& rng);

/// Two-sided tolerant tester: accepts iff the estimate is <= (eps/2) N^2.
/// A Reject carries a bad cycle when the pairs read contain one.
Verdict test_clusterability_dense(DenseOracle& o, const DenseParams& p, RandomSource& rng);

struct LocalSearchResult {
  std::size_t violations = 0;
  Clustering clustering;
};

/// Randomised best-improvement local search over clusterings with at most k
/// clusters. The first restart starts from positive components (merged
/// down to k); later restarts start from random labels. The result is
/// achievable, so it never underestimates the k-frustration index.
LocalSearchResult local_search_k_frustration(const SignedGraph& g, int k, RandomSource& rng, int restarts = 10,
                                             double move_factor = 200.0);

}  // namespace sgt
