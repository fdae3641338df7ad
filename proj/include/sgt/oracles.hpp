#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#include "sgt/core.hpp"

namespace sgt {

enum class PairAnswer : std::uint8_t { Absent, Plus, Minus };

inline PairAnswer to_answer(std::optional<Sign> s) {
  if (!s) return PairAnswer::Absent;
  return *s == Sign::Plus ? PairAnswer::Plus : PairAnswer::Minus;
}

/// Query counter shared by both models. Reading the count is free.
class QueryCounter {
 public:
  QueryCounter() = default;
  QueryCounter(const QueryCounter&) = delete;
  QueryCounter& operator=(const QueryCounter&) = delete;

  std::uint64_t query_count() const { return count_.load(std::memory_order_relaxed); }
  void reset_count() { count_.store(0, std::memory_order_relaxed); }

 protected:
  void charge() { count_.fetch_add(1, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

/// Signed adjacency-matrix access. The backing graph must outlive the oracle.
class DenseOracle : public QueryCounter {
 public:
  explicit DenseOracle(const SignedGraph& g) : graph_(&g) {}

  Node node_count() const { return graph_->node_count(); }

  /// Throws std::out_of_range for bad ids and std::invalid_argument for u == v.
  PairAnswer query(Node u, Node v);

  const SignedGraph& backing_graph() const { return *graph_; }

 private:
  const SignedGraph* graph_;
};

/// Adjacency-list access under a degree bound d. Indices are 1-based, as
/// in the model: query(v, i) answers the i-th neighbor for i in 1..d.
class BoundedDegreeOracle : public QueryCounter {
 public:
  /// Throws std::invalid_argument if `g` carries no degree bound.
  explicit BoundedDegreeOracle(const SignedGraph& g);

  Node node_count() const { return graph_->node_count(); }
  int degree_bound() const { return d_; }

  /// nullopt is the model's OutOfRange reply and is still charged.
  /// Throws std::out_of_range when v or i violates the contract.
  std::optional<Neighbor> query(Node v, int i);

  const SignedGraph& backing_graph() const { return *graph_; }

 private:
  const SignedGraph* graph_;
  int d_;
};

}  // namespace sgt
