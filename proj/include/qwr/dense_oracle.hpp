#pragma once

#include <Eigen/Dense>

#include "qwr/errors.hpp"
#include "qwr/szegedy.hpp"

namespace qwr {

/// Explicit n^2 x n^2 operators for small graphs. This is the brute-force
/// reference the spectral path is validated against; it stores full dense
/// matrices, so it refuses n > 32.
namespace dense {

inline constexpr int kMaxNodes = 32;

inline void check_capacity(int n) {
  if (n > kMaxNodes) throw capacity_error("dense oracle limited to n <= 32");
}

inline Eigen::MatrixXcd swap_matrix(int n) {
  check_capacity(n);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
  }
  return s;
}

/// Pi = sum_k |psi_k><psi_k|.
inline Eigen::MatrixXcd projector_matrix(const GoogleMatrix& gm) {
  check_capacity(gm.n);
  const int n = gm.n;
  Eigen::MatrixXcd psis = Eigen::MatrixXcd::Zero(n * n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) psis(i * n + k, i) = std::sqrt(gm.g(k, i));
  }
  return psis * psis.adjoint();
}

inline Eigen::MatrixXcd walk_matrix_U(const GoogleMatrix& gm, double theta) {
  const int n = gm.n;
  const Complex c = 1.0 - phase_factor(theta);
  Eigen::MatrixXcd reflect =
      c * projector_matrix(gm) - Eigen::MatrixXcd::Identity(n * n, n * n);
  return swap_matrix(n) * reflect;
}

inline Eigen::MatrixXcd walk_matrix_W(const GoogleMatrix& gm, const PhasePair& phases) {
  return walk_matrix_U(gm, phases.theta2) * walk_matrix_U(gm, phases.theta1);
}

}  // namespace dense

/// Applies W(theta1, theta2) t times to psi0 through the explicit matrices.
inline EdgeState dense_walk_oracle(const GoogleMatrix& gm, const PhasePair& phases,
                                   const EdgeState& psi0, int t) {
  dense::check_capacity(gm.n);
  if (t < 0) throw std::domain_error("dense_walk_oracle: t must be >= 0");
  Eigen::MatrixXcd w = dense::walk_matrix_W(gm, phases);
  EdgeState psi = psi0;
  for (int step = 0; step < t; ++step) psi = w * psi;
  return psi;
}

}  // namespace qwr
