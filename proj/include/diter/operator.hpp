#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diter/graph.hpp"

namespace diter {

/**
 * PageRank matrix without dangling completion: p_ij = d / #out_j for every
 * edge j -> i, dangling columns all zero. Weights are recomputed from the
 * out-degree on use; nothing per edge is stored.
 */
template <class Index = std::uint32_t>
class PageRankOperator {
 public:
  using graph_type = BasicGraph<Index>;

  PageRankOperator(graph_type graph, double d) : graph_(std::move(graph)), d_(d) {
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("damping must lie in (0, 1)");
  }

  const graph_type& graph() const noexcept { return graph_; }
  double damping() const noexcept { return d_; }
  std::size_t size() const noexcept { return graph_.num_nodes(); }

  bool is_dangling(std::size_t j) const noexcept { return graph_.out_degree(j) == 0; }

  /// Common value of the non-zero entries of column j.
  double weight(std::size_t j) const noexcept {
    const auto out = graph_.out_degree(j);
    return out == 0 ? 0.0 : d_ / static_cast<double>(out);
  }

  double diag_weight(std::size_t i) const noexcept {
    return graph_.has_self_loop(i) ? weight(i) : 0.0;
  }

  /// b_i, identical for every node.
  double source() const noexcept { return (1.0 - d_) / static_cast<double>(size()); }

 private:
  graph_type graph_;
  double d_;
};

template <class Index>
PageRankOperator<Index> build_operator(BasicGraph<Index> g, double d) {
  return PageRankOperator<Index>(std::move(g), d);
}

/// F_0 = B = (1 - d) / n on every node.
template <class Index>
std::vector<double> initial_fluid(const PageRankOperator<Index>& op) {
  return std::vector<double>(op.size(), op.source());
}

template <class Index>
double column_sum(const PageRankOperator<Index>& op, std::size_t j) {
  if (j >= op.size()) throw std::out_of_range("column index out of range");
  const double w = op.weight(j);
  double sum = 0.0;
  for ([[maybe_unused]] auto child : op.graph().children(j)) sum += w;
  return sum;
}

}  // namespace diter
