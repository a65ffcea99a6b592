#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "diter/graph.hpp"

namespace diter::testing {

/// 0->1, 0->2, 1->2: a three-node DAG with one dangling node.
inline Graph g3() { return Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}); }

/// 0->1, 1->0.
inline Graph c2() { return Graph::from_edges(2, {{0, 1}, {1, 0}}); }

/// Node 0 carries a self-loop and one outgoing edge; with d = 0.5, p_00 = 0.25 and b = 0.25.
inline Graph self_loop_pair() { return Graph::from_edges(2, {{0, 0}, {0, 1}}); }

/// Random DAG: edges only from lower to higher ids.
inline Graph random_dag(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution link(density);
  std::vector<Graph::Edge> edges;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i)
      if (link(rng)) edges.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)});
  return Graph::from_edges(n, std::move(edges));
}

/// Writes text to a fresh file under the test temp dir and returns its path.
inline std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "diter_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace diter::testing
