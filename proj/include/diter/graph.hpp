#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace diter {

/**
 * Immutable directed graph stored in both orientations.
 *
 * Children of j are the support of column j of the PageRank operator
 * (push / diffusion direction); parents of i are the support of line i
 * (pull / collection direction). Both adjacency arrays are CSR, sorted and
 * duplicate free.
 */
template <std::unsigned_integral Index = std::uint32_t>
class BasicGraph {
 public:
  using index_type = Index;

  struct Edge {
    Index src;
    Index dst;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  BasicGraph() : out_offsets_(1, 0), in_offsets_(1, 0) {}

  /// Builds a graph on n nodes. Duplicate edges are collapsed, self-loops kept.
  static BasicGraph from_edges(std::size_t n, std::vector<Edge> edges) {
    for (const Edge& e : edges) {
      if (e.src >= n || e.dst >= n)
        throw std::out_of_range("edge endpoint outside [0, n)");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    BasicGraph g;
    g.n_ = n;
    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    g.self_loop_.assign(n, 0);
    for (const Edge& e : edges) {
      ++g.out_offsets_[e.src + 1];
      ++g.in_offsets_[e.dst + 1];
      if (e.src == e.dst) g.self_loop_[e.src] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
      g.out_offsets_[i + 1] += g.out_offsets_[i];
      g.in_offsets_[i + 1] += g.in_offsets_[i];
    }

    // edges are sorted by (src, dst), so children come out sorted directly
    g.children_.resize(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) g.children_[k] = edges[k].dst;

    // counting pass over src order keeps every parents list sorted
    g.parents_.resize(edges.size());
    std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    for (const Edge& e : edges) g.parents_[cursor[e.dst]++] = e.src;
    return g;
  }

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return children_.size(); }

  std::span<const Index> children(std::size_t j) const noexcept {
    return {children_.data() + out_offsets_[j], children_.data() + out_offsets_[j + 1]};
  }
  std::span<const Index> parents(std::size_t i) const noexcept {
    return {parents_.data() + in_offsets_[i], parents_.data() + in_offsets_[i + 1]};
  }

  std::size_t out_degree(std::size_t j) const noexcept {
    return out_offsets_[j + 1] - out_offsets_[j];
  }
  std::size_t in_degree(std::size_t i) const noexcept {
    return in_offsets_[i + 1] - in_offsets_[i];
  }
  bool has_self_loop(std::size_t i) const noexcept { return self_loop_[i] != 0; }

  /// All edges in (src, dst) lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (std::size_t j = 0; j < n_; ++j)
      for (Index c : children(j)) out.push_back({static_cast<Index>(j), c});
    return out;
  }

  friend bool operator==(const BasicGraph&, const BasicGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> out_offsets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Index> children_;
  std::vector<Index> parents_;
  std::vector<std::uint8_t> self_loop_;
};

using Graph = BasicGraph<>;

/// Reverses every edge: the result describes the transposed matrix.
template <class Index>
BasicGraph<Index> transpose(const BasicGraph<Index>& g) {
  auto edges = g.edges();
  for (auto& e : edges) std::swap(e.src, e.dst);
  return BasicGraph<Index>::from_edges(g.num_nodes(), std::move(edges));
}

struct GraphStats {
  std::size_t n = 0;
  std::size_t l = 0;
  std::size_t d_count = 0;  // zero out-degree
  std::size_t e_count = 0;  // recursive zero in-degree closure
  std::size_t o_count = 0;  // self-loops
  std::size_t max_in = 0;
  std::size_t max_out = 0;
};

/**
 * Nodes in the recursive zero in-degree closure, in an order where each
 * node follows all of its parents. A node joins once every parent has
 * joined; a self-loop therefore keeps its node out.
 */
template <class Index>
std::vector<Index> zero_indegree_peel(const BasicGraph<Index>& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> pending(n);
  std::deque<Index> queue;
  for (std::size_t i = 0; i < n; ++i) {
    pending[i] = g.in_degree(i);
    if (pending[i] == 0) queue.push_back(static_cast<Index>(i));
  }
  std::vector<Index> order;
  while (!queue.empty()) {
    const Index j = queue.front();
    queue.pop_front();
    order.push_back(j);
    for (Index c : g.children(j))
      if (--pending[c] == 0) queue.push_back(c);
  }
  return order;
}

template <class Index>
GraphStats compute_stats(const BasicGraph<Index>& g) {
  GraphStats s;
  s.n = g.num_nodes();
  s.l = g.num_edges();
  for (std::size_t i = 0; i < s.n; ++i) {
    if (g.out_degree(i) == 0) ++s.d_count;
    if (g.has_self_loop(i)) ++s.o_count;
    s.max_in = std::max(s.max_in, g.in_degree(i));
    s.max_out = std::max(s.max_out, g.out_degree(i));
  }
  s.e_count = zero_indegree_peel(g).size();
  return s;
}

struct DegreeRecord {
  std::size_t node;
  std::size_t in_degree;
  std::size_t out_degree;

  friend bool operator==(const DegreeRecord&, const DegreeRecord&) = default;
};

template <class Index>
std::vector<DegreeRecord> degree_profile(const BasicGraph<Index>& g) {
  std::vector<DegreeRecord> out;
  out.reserve(g.num_nodes());
  for (std::size_t i = 0; i < g.num_nodes(); ++i)
    out.push_back({i, g.in_degree(i), g.out_degree(i)});
  return out;
}

/// min(k, l) distinct edges drawn uniformly; same (g, k, seed) gives the same sample.
template <class Index>
std::vector<typename BasicGraph<Index>::Edge> emit_edge_sample(const BasicGraph<Index>& g,
                                                               std::size_t k,
                                                               std::uint64_t seed) {
  const auto all = g.edges();
  std::vector<typename BasicGraph<Index>::Edge> out;
  out.reserve(std::min(k, all.size()));
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(out), k, rng);
  return out;
}

}  // namespace diter
