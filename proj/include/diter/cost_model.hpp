#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>

#include "diter/graph.hpp"

namespace diter {

/**
 * Synthetic per-entry work. Every use of a matrix entry runs
 * x <- a*x + b for m steps from x = 1 and folds the result into a
 * checksum, standing in for an expensive f_ij(x_j).
 */
class CostModel {
 public:
  static constexpr double kDefaultA = 0.999999;
  static constexpr double kDefaultB = 1e-6;

  CostModel() = default;
  explicit CostModel(std::uint64_t m, double a = kDefaultA, double b = kDefaultB)
      : m_(m), a_(a), b_(b) {}

  std::uint64_t m() const noexcept { return m_; }
  double checksum() const noexcept { return checksum_; }

  /// One entry use.
  void synthetic_entry_cost() noexcept {
    double x = 1.0;
    for (std::uint64_t k = 0; k < m_; ++k) x = a_ * x + b_;
    checksum_ += x;
  }

  void charge(std::size_t entries) noexcept {
    if (m_ == 0) return;
    for (std::size_t k = 0; k < entries; ++k) synthetic_entry_cost();
  }

 private:
  std::uint64_t m_ = 0;
  double a_ = kDefaultA;
  double b_ = kDefaultB;
  double checksum_ = 0.0;
};

struct CostReport {
  std::uint64_t entry_ops = 0;
  double nb_iter = 0.0;
  double wall_ms = 0.0;
  bool indirect_included = true;
};

/// Whole-matrix-pass equivalents: entry operations over the edge count.
inline double nb_iter(std::uint64_t entry_ops, std::size_t l) noexcept {
  return l == 0 ? 0.0 : static_cast<double>(entry_ops) / static_cast<double>(l);
}

/// Accumulating wall clock that can be paused around indirect work.
class Stopwatch {
  using clock = std::chrono::steady_clock;

 public:
  void start() noexcept {
    if (!running_) {
      begin_ = clock::now();
      running_ = true;
    }
  }
  void stop() noexcept {
    if (running_) {
      total_ += clock::now() - begin_;
      running_ = false;
    }
  }
  double elapsed_ms() const noexcept {
    auto t = total_;
    if (running_) t += clock::now() - begin_;
    return std::chrono::duration<double, std::milli>(t).count();
  }

 private:
  clock::time_point begin_{};
  clock::duration total_{};
  bool running_ = false;
};

enum class Orientation { line, column };

struct MicrobenchResult {
  double checksum = 0.0;
  std::uint64_t touched = 0;
  double wall_ms = 0.0;
};

/// Sums stored adjacency ids `repeats` times through parents (line) or children (column).
template <class Index>
MicrobenchResult iterator_microbench(const BasicGraph<Index>& g, Orientation orientation,
                                     std::size_t repeats) {
  MicrobenchResult res;
  Stopwatch watch;
  watch.start();
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
      const auto ids = orientation == Orientation::line ? g.parents(i) : g.children(i);
      for (Index id : ids) res.checksum += static_cast<double>(id);
      res.touched += ids.size();
    }
  }
  watch.stop();
  res.wall_ms = watch.elapsed_ms();
  return res;
}

}  // namespace diter
