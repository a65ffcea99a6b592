#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <unordered_set>
#include <vector>

#include "diter/graph.hpp"

namespace diter {

/**
 * Web-like graph: regular out-degrees, Zipf-distributed in-degrees.
 *
 * Each non-dangling node draws 1 + Poisson(mean_out - 1) distinct targets;
 * target popularity follows rank^-exponent over a random permutation of the
 * nodes, so in-degrees are heavy tailed while out-degrees stay narrow.
 */
struct PowerLawOptions {
  std::size_t n = 10000;
  double mean_out = 12.6;
  double exponent = 1.0;
  double dangling_fraction = 0.05;
  std::uint64_t seed = 1;
};

template <class Index = std::uint32_t>
BasicGraph<Index> power_law_graph(const PowerLawOptions& opt) {
  using Edge = typename BasicGraph<Index>::Edge;
  std::mt19937_64 rng(opt.seed);
  const std::size_t n = opt.n;

  std::vector<Index> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), Index{0});
  std::shuffle(by_rank.begin(), by_rank.end(), rng);

  std::vector<double> weights(n);
  for (std::size_t k = 0; k < n; ++k) weights[k] = std::pow(static_cast<double>(k + 1), -opt.exponent);
  std::discrete_distribution<std::size_t> pick_rank(weights.begin(), weights.end());
  std::bernoulli_distribution dangling(opt.dangling_fraction);
  std::poisson_distribution<std::size_t> extra(std::max(opt.mean_out - 1.0, 0.0));

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(static_cast<double>(n) * opt.mean_out));
  std::unordered_set<Index> targets;
  for (std::size_t src = 0; src < n; ++src) {
    if (dangling(rng)) continue;
    const std::size_t degree = std::min(n, 1 + extra(rng));
    targets.clear();
    while (targets.size() < degree) targets.insert(by_rank[pick_rank(rng)]);
    for (Index dst : targets) edges.push_back({static_cast<Index>(src), dst});
  }
  return BasicGraph<Index>::from_edges(n, std::move(edges));
}

/// Erdos-Renyi style graph; `dangling` nodes are forced to zero out-degree.
struct RandomGraphOptions {
  std::size_t n = 16;
  double density = 0.2;
  bool self_loops = true;
  std::size_t dangling = 1;
  std::uint64_t seed = 1;
};

template <class Index = std::uint32_t>
BasicGraph<Index> random_graph(const RandomGraphOptions& opt) {
  using Edge = typename BasicGraph<Index>::Edge;
  std::mt19937_64 rng(opt.seed);
  std::bernoulli_distribution link(opt.density);
  std::vector<std::uint8_t> is_sink(opt.n, 0);
  std::vector<std::size_t> order(opt.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 0; k < std::min(opt.dangling, opt.n); ++k) is_sink[order[k]] = 1;

  std::vector<Edge> edges;
  for (std::size_t j = 0; j < opt.n; ++j) {
    for (std::size_t i = 0; i < opt.n; ++i) {
      const bool take = link(rng);
      if (is_sink[j] || (i == j && !opt.self_loops)) continue;
      if (take) edges.push_back({static_cast<Index>(j), static_cast<Index>(i)});
    }
  }
  return BasicGraph<Index>::from_edges(opt.n, std::move(edges));
}

}  // namespace diter
