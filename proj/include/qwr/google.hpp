#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "qwr/errors.hpp"
#include "qwr/graph.hpp"

namespace qwr {

/// Damped column-stochastic walk matrix G = alpha*E + (1-alpha)/n * ones.
/// Columns index the source node; G(i, j) is the probability of hopping
/// from j to i. Dense on purpose: the quantum walk needs entrywise square
/// roots of G and every experiment here has n <= a few hundred.
struct GoogleMatrix {
  int n = 0;
  double alpha = 0.85;
  Eigen::MatrixXd g;
};

/// H(i, j) = 1/outdeg(j) when the edge (j, i) exists, else 0.
/// Dangling nodes (outdeg 0) leave their column all-zero.
inline Eigen::MatrixXd connectivity_matrix(const DirectedGraph& graph) {
  const int n = graph.node_count();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    int deg = graph.out_degree(j);
    if (deg == 0) continue;
    double w = 1.0 / deg;
    for (int i : graph.out_adj()[j]) h(i, j) += w;
  }
  return h;
}

/// Replaces all-zero columns with uniform 1/n columns. Any column whose sum
/// is neither 0 nor 1 (within 1e-12) indicates a malformed input matrix.
inline Eigen::MatrixXd patch_dangling(const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.cols());
  Eigen::MatrixXd e = h;
  for (int j = 0; j < n; ++j) {
    double sum = e.col(j).sum();
    if (std::abs(sum) <= 1e-12) {
      e.col(j).setConstant(1.0 / n);
    } else if (std::abs(sum - 1.0) > 1e-12) {
      throw integrity_error("patch_dangling: column sum is neither 0 nor 1");
    }
  }
  return e;
}

inline GoogleMatrix google_matrix(const Eigen::MatrixXd& e, double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw std::domain_error("damping alpha outside [0,1]");
  const int n = static_cast<int>(e.cols());
  GoogleMatrix gm;
  gm.n = n;
  gm.alpha = alpha;
  gm.g = alpha * e + Eigen::MatrixXd::Constant(n, n, (1.0 - alpha) / n);
  return gm;
}

/// connectivity -> dangling patch -> damping, in one call.
inline GoogleMatrix build_google(const DirectedGraph& graph, double alpha) {
  return google_matrix(patch_dangling(connectivity_matrix(graph)), alpha);
}

}  // namespace qwr
