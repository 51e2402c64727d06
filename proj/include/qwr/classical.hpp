#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "qwr/errors.hpp"
#include "qwr/google.hpp"
#include "qwr/graph.hpp"

namespace qwr {

/// Per-node importance distribution. Entries are nonnegative and sum to 1.
struct PageRankVector {
  Eigen::VectorXd values;
  std::string algorithm;  // "classical", "standard", "equal", "opposite", "alternate"
  double alpha = 0.85;
  int iterations = 0;
};

/// Power iteration on G from the uniform distribution (or `start` when
/// given). Stops when the L1 step difference drops below tol; the fixed
/// point then satisfies ||G x - x||_1 < 10*tol.
inline PageRankVector classical_pagerank(const GoogleMatrix& gm, double tol = 1e-12,
                                         int max_iter = 10000,
                                         std::optional<Eigen::VectorXd> start = std::nullopt) {
  if (tol <= 0.0) throw std::domain_error("classical_pagerank: tol must be > 0");
  if (max_iter < 1) throw std::domain_error("classical_pagerank: max_iter must be >= 1");
  const int n = gm.n;
  Eigen::VectorXd x = start ? *start : Eigen::VectorXd::Constant(n, 1.0 / n);
  x /= x.sum();

  double diff = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd next = gm.g * x;
    next /= next.sum();  // guard against drift; G is stochastic so this is ~1
    diff = (next - x).lpNorm<1>();
    x = std::move(next);
    if (diff < tol) {
      PageRankVector result;
      result.values = std::move(x);
      result.algorithm = "classical";
      result.alpha = gm.alpha;
      result.iterations = it;
      return result;
    }
  }
  throw convergence_error("classical_pagerank: no convergence after max_iter", diff);
}

/// Nodes with no incoming edges (a self-loop counts as incoming). Such nodes
/// receive only teleport and dangling mass, so their classical PageRank is
/// exactly degenerate.
inline std::vector<int> residual_node_set(const DirectedGraph& g) {
  std::vector<int> residual;
  for (int v = 0; v < g.node_count(); ++v) {
    if (g.in_degree(v) == 0) residual.push_back(v);
  }
  return residual;
}

}  // namespace qwr
