#include "sgt/oracles.hpp"

#include <stdexcept>
#include <string>

namespace sgt {

PairAnswer DenseOracle::query(Node u, Node v) {
  const Node n = graph_->node_count();
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw std::out_of_range("dense query (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
  }
  if (u == v) throw std::invalid_argument("dense query on the diagonal is undefined");
  charge();
  return to_answer(graph_->edge_sign(u, v));
}

BoundedDegreeOracle::BoundedDegreeOracle(const SignedGraph& g) : graph_(&g), d_(0) {
  if (!g.degree_bound()) throw std::invalid_argument("bounded-degree oracle needs a graph with a degree bound");
  d_ = *g.degree_bound();
}

std::optional<Neighbor> BoundedDegreeOracle::query(Node v, int i) {
  if (v < 0 || v >= graph_->node_count()) throw std::out_of_range("adjacency query node " + std::to_string(v) + " out of range");
  if (i < 1 || i > d_) throw std::out_of_range("adjacency query index " + std::to_string(i) + " outside 1.." + std::to_string(d_));
  charge();
  auto nbrs = graph_->neighbors(v);
  if (static_cast<std::size_t>(i) > nbrs.size()) return std::nullopt;
  return nbrs[static_cast<std::size_t>(i - 1)];
}

}  // namespace sgt
