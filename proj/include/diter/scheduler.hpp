#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "diter/diffusion.hpp"
#include "diter/graph.hpp"

namespace diter {

enum class SchedulerKind { cyc, max, max2, op, op2, op3, sop };

/**
 * Builds the diffusion sequence one batch (cycle) at a time.
 *
 * Selection rules, evaluated on the state at cycle start:
 *   cyc   f_i > 0
 *   max   f_i >= theta, theta divided by 1.2 whenever nothing qualifies
 *   max2  f_i > max_j f_j / 10
 *   op    zero in-degree closure first (once, in peel order), then
 *         f_i / h_i >= theta with decrement 1.2 (h_i = 0 counts as +inf)
 *   op2   as op with decrement 10
 *   op3   f_i > 0.9 r / n
 *   sop   f_i > r #out_i / l
 * A batch that would come out empty falls back to the argmax of f.
 *
 * Fluid at a node only grows until that node is diffused, so every member
 * of a batch still holds positive fluid when its turn comes.
 */
class Scheduler {
 public:
  template <class Index>
  Scheduler(SchedulerKind kind, const PageRankOperator<Index>& op) : kind_(kind) {
    if (kind == SchedulerKind::op || kind == SchedulerKind::op2) {
      for (Index i : zero_indegree_peel(op.graph())) peel_queue_.push_back(i);
    } else {
      peel_done_ = true;
    }
    decrement_ = kind == SchedulerKind::op2 ? 10.0 : 1.2;
  }

  SchedulerKind kind() const noexcept { return kind_; }
  double threshold() const noexcept { return threshold_; }
  double decrement() const noexcept { return decrement_; }
  double cycle_residual() const noexcept { return cycle_residual_; }
  std::size_t cycle_index() const noexcept { return cycle_index_; }
  bool peel_done() const noexcept { return peel_done_; }
  std::span<const std::size_t> peel_queue() const noexcept { return peel_queue_; }
  /// Number of batches that needed the argmax fallback.
  std::size_t fallbacks() const noexcept { return fallbacks_; }

  /// Next batch of nodes to diffuse, in order. Requires state.r > 0.
  template <class Index>
  std::span<const std::size_t> next_batch(const DiffusionState& s,
                                          const PageRankOperator<Index>& op) {
    ++cycle_index_;
    cycle_residual_ = s.r;
    batch_.clear();
    const std::size_t n = s.f.size();
    const auto& f = s.f;

    switch (kind_) {
      case SchedulerKind::cyc:
        for (std::size_t i = 0; i < n; ++i)
          if (f[i] > 0.0) batch_.push_back(i);
        break;
      case SchedulerKind::max:
        select_by_threshold(n, [&](std::size_t i) { return f[i]; });
        break;
      case SchedulerKind::max2: {
        double top = 0.0;
        for (double v : f) top = std::max(top, v);
        const double bar = top / 10.0;
        for (std::size_t i = 0; i < n; ++i)
          if (f[i] > bar) batch_.push_back(i);
        break;
      }
      case SchedulerKind::op:
      case SchedulerKind::op2:
        if (!peel_done_) {
          peel_done_ = true;
          for (std::size_t i : peel_queue_)
            if (f[i] > 0.0) batch_.push_back(i);
          if (!batch_.empty()) break;
        }
        select_by_threshold(n, [&](std::size_t i) {
          if (!(f[i] > 0.0)) return 0.0;
          return s.h[i] > 0.0 ? f[i] / s.h[i] : std::numeric_limits<double>::infinity();
        });
        break;
      case SchedulerKind::op3: {
        const double bar = cycle_residual_ / static_cast<double>(n) * 0.9;
        for (std::size_t i = 0; i < n; ++i)
          if (f[i] > bar) batch_.push_back(i);
        break;
      }
      case SchedulerKind::sop: {
        const auto& g = op.graph();
        const double per_link =
            g.num_edges() == 0 ? 0.0 : cycle_residual_ / static_cast<double>(g.num_edges());
        for (std::size_t i = 0; i < n; ++i)
          if (f[i] > per_link * static_cast<double>(g.out_degree(i))) batch_.push_back(i);
        break;
      }
    }

    if (batch_.empty()) {
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < n; ++i)
        if (f[i] > 0.0 && (!best || f[i] > f[*best])) best = i;
      if (best) {
        batch_.push_back(*best);
        ++fallbacks_;
      }
    }
    return batch_;
  }

 private:
  // Selects key >= theta. When nothing qualifies theta is divided by the
  // decrement until the best key reaches it, which is what repeated
  // rescans would produce. An unset theta jumps straight to the best key.
  template <class Key>
  void select_by_threshold(std::size_t n, Key key) {
    for (int pass = 0; pass < 2; ++pass) {
      double best = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double k = key(i);
        if (k > 0.0 && k >= threshold_) batch_.push_back(i);
        best = std::max(best, k);
      }
      if (!batch_.empty() || !(best > 0.0)) return;
      if (threshold_ == std::numeric_limits<double>::infinity()) {
        threshold_ = best;
      } else {
        while (threshold_ > best) threshold_ /= decrement_;
      }
    }
  }

  SchedulerKind kind_;
  double threshold_ = std::numeric_limits<double>::infinity();
  double decrement_ = 1.2;
  double cycle_residual_ = 0.0;
  std::size_t cycle_index_ = 0;
  std::vector<std::size_t> peel_queue_;
  bool peel_done_ = false;
  std::size_t fallbacks_ = 0;
  std::vector<std::size_t> batch_;
};

}  // namespace diter
