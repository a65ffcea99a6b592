#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diter/cost_model.hpp"
#include "diter/diffusion.hpp"
#include "diter/error.hpp"
#include "diter/operator.hpp"
#include "diter/scheduler.hpp"

namespace diter {

enum class Algorithm { pi, gs, gsp, di_cyc, di_max, di_max2, di_op, di_op2, di_op3, di_sop };

inline constexpr std::array<Algorithm, 10> kAllAlgorithms = {
    Algorithm::pi,     Algorithm::gs,      Algorithm::gsp,    Algorithm::di_cyc, Algorithm::di_max,
    Algorithm::di_max2, Algorithm::di_op,  Algorithm::di_op2, Algorithm::di_op3, Algorithm::di_sop};

inline std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::pi: return "pi";
    case Algorithm::gs: return "gs";
    case Algorithm::gsp: return "gsp";
    case Algorithm::di_cyc: return "di-cyc";
    case Algorithm::di_max: return "di-max";
    case Algorithm::di_max2: return "di-max2";
    case Algorithm::di_op: return "di-op";
    case Algorithm::di_op2: return "di-op2";
    case Algorithm::di_op3: return "di-op3";
    case Algorithm::di_sop: return "di-sop";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view id) noexcept {
  for (Algorithm a : kAllAlgorithms)
    if (to_string(a) == id) return a;
  return std::nullopt;
}

inline std::optional<SchedulerKind> scheduler_kind(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::di_cyc: return SchedulerKind::cyc;
    case Algorithm::di_max: return SchedulerKind::max;
    case Algorithm::di_max2: return SchedulerKind::max2;
    case Algorithm::di_op: return SchedulerKind::op;
    case Algorithm::di_op2: return SchedulerKind::op2;
    case Algorithm::di_op3: return SchedulerKind::op3;
    case Algorithm::di_sop: return SchedulerKind::sop;
    default: return std::nullopt;
  }
}

struct SolverOptions {
  Algorithm algorithm = Algorithm::di_sop;
  double target = 1e-6;
  /// Diagonal elimination for DI kinds; gs with this off behaves as gsp.
  bool diag_elim = true;
  /// Keep convergence tests, residual refreshes and tracing inside the timed region.
  bool include_indirect = true;
};

struct TraceRecord {
  std::size_t cycle = 0;
  std::uint64_t entry_ops = 0;
  double nb_iter = 0.0;
  double corrected_error = 0.0;
  double elapsed_ms = 0.0;
};

enum class RunStatus { converged, stalled };

struct RunResult {
  Algorithm algorithm = Algorithm::pi;
  RunStatus status = RunStatus::converged;
  std::string diagnostic;
  /// Renormalized history: approximates the completed PageRank vector.
  std::vector<double> x;
  double leak = 0.0;
  double residual = 0.0;
  std::uint64_t entry_ops = 0;
  std::uint64_t diffusions = 0;
  std::size_t cycles = 0;
  std::size_t fallbacks = 0;
  double nb_iter = 0.0;
  double wall_ms = 0.0;
  double final_error = 0.0;
  double checksum = 0.0;
  bool diag_elim = true;
  bool indirect_included = true;

  CostReport cost_report() const { return {entry_ops, nb_iter, wall_ms, indirect_included}; }
};

/// Effective diagonal handling of a run: PI never eliminates, gsp never does.
inline bool uses_diag_elim(Algorithm a, bool requested) noexcept {
  if (a == Algorithm::pi || a == Algorithm::gsp) return false;
  return requested;
}

/**
 * Runs one algorithm until the corrected L1 error drops to the target.
 *
 * pi diffuses all nodes synchronously, gs / gsp sweep line updates in
 * index order and rebuild the residual once per sweep, the di-* kinds
 * diffuse scheduler batches. The error is evaluated once per cycle; a run
 * is declared stalled when the error fails to shrink by a factor 0.999999
 * within 10 n consecutive diffusions.
 */
template <class Index>
RunResult run_solver(const PageRankOperator<Index>& op, const SolverOptions& opt, CostModel& cost,
                     std::vector<TraceRecord>* trace = nullptr) {
  if (!(opt.target > 0.0)) throw std::invalid_argument("target must be positive");
  const double d = op.damping();
  const std::size_t n = op.size();
  const std::size_t l = op.graph().num_edges();
  const bool diag_elim = uses_diag_elim(opt.algorithm, opt.diag_elim);

  RunResult res;
  res.algorithm = opt.algorithm;
  res.diag_elim = diag_elim;
  res.indirect_included = opt.include_indirect;

  DiffusionState state = DiffusionState::initial(op);
  std::optional<Scheduler> scheduler;
  if (auto kind = scheduler_kind(opt.algorithm)) scheduler.emplace(*kind, op);

  Stopwatch watch;
  double anchor_error = 0.0;
  std::uint64_t anchor_diffusions = 0;
  const std::uint64_t patience = 10 * static_cast<std::uint64_t>(n);

  // Cycle-boundary bookkeeping; returns true when the run is over.
  auto finish_cycle = [&]() {
    if (!opt.include_indirect) watch.stop();
    if (opt.algorithm == Algorithm::gs || opt.algorithm == Algorithm::gsp) {
      state.f = residual_fluid(op, state.h);
    }
    state.refresh_residual();
    const double err = corrected_error(state.r, state.e, d);
    res.final_error = err;
    if (trace) {
      trace->push_back({res.cycles, state.entry_ops, nb_iter(state.entry_ops, l), err,
                        watch.elapsed_ms()});
    }
    bool done = err <= opt.target;
    if (!done) {
      if (res.cycles == 0 || err <= anchor_error * 0.999999) {
        anchor_error = err;
        anchor_diffusions = state.diffusions;
      } else if (state.diffusions - anchor_diffusions > patience) {
        res.status = RunStatus::stalled;
        res.diagnostic = "corrected error stuck at " + std::to_string(err) + " after " +
                         std::to_string(state.diffusions) + " diffusions";
        done = true;
      }
    }
    if (!opt.include_indirect) watch.start();
    return done;
  };

  watch.start();
  bool done = finish_cycle();
  while (!done) {
    switch (opt.algorithm) {
      case Algorithm::pi:
        synchronous_sweep(state, op, &cost);
        break;
      case Algorithm::gs:
      case Algorithm::gsp: {
        const bool keep_diag = !diag_elim;
        for (std::size_t i = 0; i < n; ++i) {
          state.e += gs_update(std::span<double>(state.h), op, i, keep_diag);
          const std::size_t in = op.graph().in_degree(i);
          state.entry_ops += in;
          cost.charge(in);
        }
        state.diffusions += n;
        break;
      }
      default:
        for (std::size_t i : scheduler->next_batch(state, op)) diffuse(state, op, i, diag_elim, &cost);
        break;
    }
    ++res.cycles;
    done = finish_cycle();
  }
  watch.stop();

  res.wall_ms = watch.elapsed_ms();
  res.x = renormalize(state.h, state.e, d);
  res.leak = state.e;
  res.residual = state.r;
  res.entry_ops = state.entry_ops;
  res.diffusions = state.diffusions;
  res.nb_iter = nb_iter(state.entry_ops, l);
  res.checksum = cost.checksum();
  if (scheduler) res.fallbacks = scheduler->fallbacks();
  return res;
}

template <class Index>
RunResult run_solver(const PageRankOperator<Index>& op, const SolverOptions& opt) {
  CostModel none;
  return run_solver(op, opt, none);
}

/// Wall-clock cost of one run, with or without indirect operations timed.
template <class Index>
CostReport time_run(const PageRankOperator<Index>& op, SolverOptions opt, CostModel& cost,
                    bool include_indirect) {
  opt.include_indirect = include_indirect;
  return run_solver(op, opt, cost).cost_report();
}

}  // namespace diter
