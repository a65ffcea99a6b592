#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "diter/graph.hpp"
#include "diter/operator.hpp"

namespace diter::oracle {

// Dense reference solutions for small instances. They only read the graph
// structure and never touch the diffusion code they are used to check.

inline constexpr std::size_t kMaxDenseNodes = 2048;

struct DenseSolution {
  std::vector<double> x;
  double residual_norm = 0.0;
};

namespace detail {

inline DenseSolution solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (a.rows() > 0 && lu.determinant() == 0.0)
    throw std::runtime_error("dense oracle: singular system");
  const Eigen::VectorXd x = lu.solve(b);
  DenseSolution sol;
  sol.residual_norm = (a * x - b).lpNorm<1>();
  if (!(sol.residual_norm <= 1e-10)) throw std::runtime_error("dense oracle: inaccurate solve");
  sol.x.assign(x.data(), x.data() + x.size());
  return sol;
}

template <class Index>
Eigen::MatrixXd transition(const BasicGraph<Index>& g, double d, bool complete) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto children = g.children(static_cast<std::size_t>(j));
    if (children.empty()) {
      if (complete) p.col(j).setConstant(d / static_cast<double>(n));
      continue;
    }
    for (Index i : children) p(i, j) = d / static_cast<double>(children.size());
  }
  return p;
}

}  // namespace detail

/// Dense matrix P (uncompleted, or with dangling columns filled by d / n).
template <class Index>
Eigen::MatrixXd dense_matrix(const BasicGraph<Index>& g, double d, bool complete = false) {
  return detail::transition(g, d, complete);
}

/// (I - P) X = B with partial pivoting.
template <class Index>
DenseSolution dense_solve_uncompleted(const PageRankOperator<Index>& op) {
  const std::size_t n = op.size();
  if (n > kMaxDenseNodes) throw std::length_error("dense oracle limited to 2048 nodes");
  const double d = op.damping();
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(n, n) - detail::transition(op.graph(), d, false);
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(n, (1.0 - d) / static_cast<double>(n));
  return detail::solve(a, b);
}

/// Classical PageRank: dangling columns completed with d / n, |X|_1 = 1.
template <class Index>
DenseSolution dense_pagerank_completed(const BasicGraph<Index>& g, double d) {
  const std::size_t n = g.num_nodes();
  if (n > kMaxDenseNodes) throw std::length_error("dense oracle limited to 2048 nodes");
  if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("damping must lie in (0, 1)");
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - detail::transition(g, d, true);
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(n, (1.0 - d) / static_cast<double>(n));
  return detail::solve(a, b);
}

}  // namespace diter::oracle
