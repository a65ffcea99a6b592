#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "diter/cost_model.hpp"
#include "diter/operator.hpp"

namespace diter {

/**
 * Working vectors of the diffusion engine.
 *
 * h accumulates diffused mass, f is the fluid still waiting at each node
 * (always f = B + P h - h), e is the mass that left through dangling
 * nodes and r caches |f|_1. Every diffusion preserves
 *   |f|_1 + (1 - d) |h|_1 + d e = 1 - d.
 */
struct DiffusionState {
  std::vector<double> h;
  std::vector<double> f;
  double e = 0.0;
  double r = 0.0;
  std::uint64_t entry_ops = 0;
  std::uint64_t diffusions = 0;

  template <class Index>
  static DiffusionState initial(const PageRankOperator<Index>& op) {
    DiffusionState s;
    s.h.assign(op.size(), 0.0);
    s.f = initial_fluid(op);
    s.refresh_residual();
    return s;
  }

  /// Replaces the incrementally maintained r with an exact sum.
  void refresh_residual() noexcept { r = std::accumulate(f.begin(), f.end(), 0.0); }
};

/**
 * Diffuses the fluid of node i along column i.
 *
 * With diag_elim the self-loop is folded into the amount, phi = f_i / (1 - p_ii),
 * and nothing returns to i. Without it phi = f_i and p_ii * phi lands back
 * on f_i, so the node stays eligible.
 */
template <class Index>
void diffuse(DiffusionState& s, const PageRankOperator<Index>& op, std::size_t i, bool diag_elim,
             CostModel* cost = nullptr) {
  if (i >= op.size()) throw std::out_of_range("diffuse: node out of range");
  const auto children = op.graph().children(i);
  double phi = s.f[i];
  const double p_ii = op.diag_weight(i);
  if (diag_elim && p_ii > 0.0) phi /= 1.0 - p_ii;

  s.h[i] += phi;
  s.f[i] = 0.0;
  const double push = op.weight(i) * phi;
  if (diag_elim && p_ii > 0.0) {
    for (Index c : children)
      if (c != i) s.f[c] += push;
  } else {
    for (Index c : children) s.f[c] += push;
  }

  if (children.empty()) {
    s.e += phi;
    s.r -= phi;
  } else {
    s.r += (op.damping() - 1.0) * phi;
  }
  s.entry_ops += children.size();
  ++s.diffusions;
  if (cost) cost->charge(children.size());
}

/**
 * One Jacobi step seen as every node diffusing at once:
 * h += f, f <- P f, e += fluid held by dangling nodes. Costs l entries
 * whatever the fluid distribution.
 */
template <class Index>
void synchronous_sweep(DiffusionState& s, const PageRankOperator<Index>& op,
                       CostModel* cost = nullptr) {
  const auto& g = op.graph();
  const std::size_t n = op.size();
  std::vector<double> next(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Index j : g.parents(i)) acc += op.weight(j) * s.f[j];
    next[i] = acc;
  }
  double r = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    s.h[j] += s.f[j];
    if (op.is_dangling(j)) s.e += s.f[j];
    r += next[j];
  }
  s.f.swap(next);
  s.r = r;
  s.entry_ops += g.num_edges();
  s.diffusions += n;
  if (cost) cost->charge(g.num_edges());
}

/**
 * Gauss-Seidel line update of h_i. Without keep_diag the diagonal term is
 * dropped and the result scaled by 1 / (1 - p_ii); with keep_diag the old
 * h_i enters through p_ii. Returns the mass leaked when i is dangling
 * (otherwise 0). Uses #in_i entries.
 */
template <class Index>
double gs_update(std::span<double> h, const PageRankOperator<Index>& op, std::size_t i,
                 bool keep_diag) {
  if (i >= op.size()) throw std::out_of_range("gs_update: node out of range");
  double acc = op.source();
  for (Index j : op.graph().parents(i)) {
    if (j == i && !keep_diag) continue;
    acc += op.weight(j) * h[j];
  }
  const double p_ii = op.diag_weight(i);
  if (!keep_diag && p_ii > 0.0) acc /= 1.0 - p_ii;
  const double old = h[i];
  h[i] = acc;
  return op.is_dangling(i) ? (acc - old) * (1.0 - p_ii) : 0.0;
}

/// f = B + P h - h.
template <class Index>
std::vector<double> residual_fluid(const PageRankOperator<Index>& op, std::span<const double> h) {
  const std::size_t n = op.size();
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = op.source();
    for (Index j : op.graph().parents(i)) acc += op.weight(j) * h[j];
    f[i] = acc - h[i];
  }
  return f;
}

inline double conservation_defect(const DiffusionState& s, double d) {
  const double f1 = std::accumulate(s.f.begin(), s.f.end(), 0.0);
  const double h1 = std::accumulate(s.h.begin(), s.h.end(), 0.0);
  return f1 + (1.0 - d) * h1 + d * s.e - (1.0 - d);
}

}  // namespace diter
