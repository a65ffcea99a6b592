#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "diter/diffusion.hpp"

namespace diter {

// L1 distance to the completed PageRank vector. Exact as long as every
// fluid entry is non-negative and e is the mass diffused at dangling nodes.

struct ErrorSnapshot {
  double r = 0.0;
  double e = 0.0;
  double d = 0.0;
  double corrected = 0.0;
};

namespace detail {
inline double leak_denominator(double e, double d) {
  const double den = 1.0 - d - d * e;
  if (!(den > 0.0)) throw std::domain_error("leak accounting corrupted: 1 - d - d*e <= 0");
  return den;
}
}  // namespace detail

/// r / (1 - d - d e).
inline double corrected_error(double r, double e, double d) {
  return r / detail::leak_denominator(e, d);
}

inline ErrorSnapshot snapshot(double r, double e, double d) {
  return {r, e, d, corrected_error(r, e, d)};
}

/// Scales h by (1 - d) / (1 - d - d e), mapping it onto the completed problem.
inline std::vector<double> renormalize(std::span<const double> h, double e, double d) {
  const double factor = (1.0 - d) / detail::leak_denominator(e, d);
  std::vector<double> out(h.begin(), h.end());
  for (double& v : out) v *= factor;
  return out;
}

inline bool target_reached(const DiffusionState& s, double d, double target) {
  return corrected_error(s.r, s.e, d) <= target;
}

}  // namespace diter
