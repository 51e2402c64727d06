#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qwr/classical.hpp"
#include "qwr/errors.hpp"
#include "qwr/szegedy.hpp"

namespace qwr {

enum class SchemeKind { standard, equal, opposite, alternate };

/// One-parameter phase scheme. theta is canonically in [0, pi]; negative
/// values are accepted and produce the conjugate walk, which has identical
/// instantaneous probabilities. Standard ignores theta.
struct APRScheme {
  SchemeKind kind = SchemeKind::standard;
  double theta = std::numbers::pi / 2.0;
};

inline PhasePair scheme_phase_map(const APRScheme& scheme) {
  switch (scheme.kind) {
    case SchemeKind::standard:
      return {std::numbers::pi, std::numbers::pi};
    case SchemeKind::equal:
      return {scheme.theta, scheme.theta};
    case SchemeKind::opposite:
      return {scheme.theta, -scheme.theta};
    case SchemeKind::alternate:
      return {std::numbers::pi, scheme.theta};
  }
  throw std::domain_error("scheme_phase_map: unknown scheme");
}

inline std::string scheme_label(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::standard:  return "standard";
    case SchemeKind::equal:     return "equal";
    case SchemeKind::opposite:  return "opposite";
    case SchemeKind::alternate: return "alternate";
  }
  return "?";
}

/// |psi_0> = (1/sqrt(n)) sum_i |psi_i>, the equal superposition of the
/// outgoing-edge states. Always lies in the dynamical subspace.
inline EdgeState initial_state(const GoogleMatrix& gm) {
  return lift(Eigen::VectorXd::Constant(gm.n, 1.0 / std::sqrt(double(gm.n))), gm);
}

/// Node marginal of register 2: I(i) = sum_j |<j, i | psi>|^2.
inline Eigen::VectorXd instantaneous_pagerank(const EdgeState& psi, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out[i] += std::norm(psi[j * n + i]);
  }
  return out;
}

/// Full quantum run: instantaneous series, time average, per-node standard
/// deviation of the fluctuation, and a convergence verdict.
struct QuantumPageRankResult {
  PageRankVector averaged;         // mean over the T+1 samples t = 0..T
  Eigen::MatrixXd instantaneous;   // (T+1) x n, row t = I(., t)
  Eigen::VectorXd std_dev;         // population standard deviation per node
  long long steps = 0;             // T
  APRScheme scheme;
  double alpha = 0.85;
  bool converged = false;
  double final_drift = 0.0;
};

namespace detail {

// Window of the trailing ~10% of the sampled steps, never empty.
inline long long drift_window_start(long long T) {
  long long w = std::max<long long>(1, (T + 1) / 10);
  return T - w + 1;
}

}  // namespace detail

/// Evolves psi_0 under W for t = 0..T through the spectral decomposition.
/// The average divides by T+1 (the sample count); per-node std_dev uses
/// population normalization over the same samples. converged reports whether
/// the running average moved less than convergence_tol (max over nodes) over
/// the trailing 10% of steps.
inline QuantumPageRankResult run_quantum_pagerank_phases(const GoogleMatrix& gm,
                                                         const PhasePair& phases,
                                                         long long T,
                                                         double convergence_tol = 1e-4,
                                                         APRScheme scheme = {}) {
  if (T < 1) throw std::domain_error("run_quantum_pagerank: T must be >= 1");
  const int n = gm.n;
  const EdgeState psi0 = initial_state(gm);
  const SpectralDecomposition dec = decompose(gm, phases, psi0);

  QuantumPageRankResult result;
  result.instantaneous.resize(T + 1, n);
  result.steps = T;
  result.scheme = scheme;
  result.alpha = gm.alpha;

  const long long window_start = detail::drift_window_start(T);
  std::vector<Eigen::VectorXd> window_means;
  Eigen::VectorXd running_sum = Eigen::VectorXd::Zero(n);

  Eigen::VectorXcd phased(dec.size());
  for (long long t = 0; t <= T; ++t) {
    for (int b = 0; b < dec.size(); ++b) phased[b] = unit_power(dec.nus[b], t) * dec.coeffs[b];
    EdgeState psi = dec.vectors * phased + dec.ortho;
    Eigen::VectorXd row = instantaneous_pagerank(psi, n);
    result.instantaneous.row(t) = row;
    running_sum += row;
    if (t >= window_start) window_means.push_back(running_sum / double(t + 1));
  }

  Eigen::VectorXd mean = result.instantaneous.colwise().mean();
  Eigen::VectorXd second = result.instantaneous.array().square().colwise().mean();
  result.std_dev = (second.array() - mean.array().square()).max(0.0).sqrt();

  result.final_drift = 0.0;
  const Eigen::VectorXd& final_mean = window_means.back();
  for (const auto& r : window_means)
    result.final_drift = std::max(result.final_drift, (r - final_mean).lpNorm<Eigen::Infinity>());
  result.converged = result.final_drift < convergence_tol;

  result.averaged.values = mean.cwiseMax(0.0);
  result.averaged.algorithm = scheme_label(scheme.kind);
  result.averaged.alpha = gm.alpha;
  result.averaged.iterations = static_cast<int>(T);
  return result;
}

inline QuantumPageRankResult run_quantum_pagerank(const GoogleMatrix& gm, const APRScheme& scheme,
                                                  long long T, double convergence_tol = 1e-4) {
  return run_quantum_pagerank_phases(gm, scheme_phase_map(scheme), T, convergence_tol, scheme);
}

/// Time-averaged distribution only, in O(n^3) time and O(n^2) memory.
struct AveragedQuantumResult {
  Eigen::VectorXd averaged;
  bool converged = false;
  double drift = 0.0;
};

namespace detail {

inline Eigen::MatrixXcd real_times_complex(const Eigen::MatrixXd& r, const Eigen::MatrixXcd& c) {
  Eigen::MatrixXcd out(r.rows(), c.cols());
  out.real() = r * c.real();
  out.imag() = r * c.imag();
  return out;
}

inline Eigen::MatrixXcd complex_times_real(const Eigen::MatrixXcd& c, const Eigen::MatrixXd& r) {
  Eigen::MatrixXcd out(c.rows(), r.cols());
  out.real() = c.real() * r;
  out.imag() = c.imag() * r;
  return out;
}

}  // namespace detail

/// Closed-form evaluation of the time average. Writing the state as
/// V diag(nu^t) c with V = P X + Q Y (P holding the lifted |lambda~>
/// columns and Q their swaps), the mean over t = 0..T of the register-2
/// marginal contracts, per node, to four n x n quadratic forms in the
/// eigenvectors of D weighted by Cesaro sums of nu_b conj(nu_b'), so no
/// n^2-sized vector is ever formed. Equals the direct run's average to
/// roundoff; the convergence drift is sampled at the trailing window's
/// edge and midpoint rather than maximized over every step.
///
/// Requires the PageRank initial state (it lies in the dynamical subspace;
/// verified through the Parseval sum).
inline AveragedQuantumResult time_averaged_quantum_pagerank(const GoogleMatrix& gm,
                                                            const PhasePair& phases,
                                                            long long T,
                                                            double convergence_tol = 1e-4,
                                                            const SymmetricEigen* cached_eig = nullptr) {
  if (T < 1) throw std::domain_error("time_averaged_quantum_pagerank: T must be >= 1");
  const int n = gm.n;
  BlockDecomposition blocks = cached_eig ? decompose_blocks(gm, phases, *cached_eig)
                                         : decompose_blocks(gm, phases);
  const int m_count = static_cast<int>(blocks.solutions.size());
  const Eigen::MatrixXd& C = blocks.d_vectors;

  // <lambda~_m | psi0> = s_m / sqrt(n) with s_m the eigenvector's entry sum;
  // <S lambda~_m | psi0> picks up one factor lambda_m.
  Eigen::VectorXd col_sums = C.colwise().sum() / std::sqrt(double(n));
  Eigen::VectorXcd coeff(m_count);
  Eigen::VectorXd args(m_count);
  for (int b = 0; b < m_count; ++b) {
    const auto& sol = blocks.solutions[b];
    double s = col_sums[sol.lambda_index];
    double lam = blocks.lambdas[sol.lambda_index];
    coeff[b] = std::conj(sol.coord[0]) * s + std::conj(sol.coord[1]) * (lam * s);
    args[b] = std::arg(sol.nu);
  }
  double parseval = coeff.squaredNorm();
  if (std::abs(parseval - 1.0) > 1e-8)
    throw numeric_error("time_averaged_quantum_pagerank: initial state leaks out of the "
                        "dynamical subspace (Parseval sum " + std::to_string(parseval) + ")");

  auto average_at = [&](long long horizon) {
    const double samples = double(horizon) + 1.0;
    Eigen::MatrixXcd weight(m_count, m_count);
    for (int b = 0; b < m_count; ++b) {
      for (int b2 = 0; b2 < m_count; ++b2) {
        double delta = args[b] - args[b2];
        Complex z = std::polar(1.0, delta);
        Complex gamma;
        if (std::abs(1.0 - z) < 1e-14) {
          gamma = 1.0;
        } else {
          gamma = (1.0 - std::polar(1.0, samples * delta)) / (samples * (1.0 - z));
        }
        weight(b, b2) = coeff[b] * std::conj(coeff[b2]) * gamma;
      }
    }

    Eigen::MatrixXcd k_pp = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd k_pq = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd k_qp = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd k_qq = Eigen::MatrixXcd::Zero(n, n);
    for (int b = 0; b < m_count; ++b) {
      const auto& sb = blocks.solutions[b];
      for (int b2 = 0; b2 < m_count; ++b2) {
        const auto& sb2 = blocks.solutions[b2];
        const Complex w = weight(b, b2);
        const Complex x1 = sb.coord[0], x2 = sb.coord[1];
        const Complex y1 = std::conj(sb2.coord[0]), y2 = std::conj(sb2.coord[1]);
        k_pp(sb.lambda_index, sb2.lambda_index) += x1 * w * y1;
        k_pq(sb.lambda_index, sb2.lambda_index) += x1 * w * y2;
        k_qp(sb.lambda_index, sb2.lambda_index) += x2 * w * y1;
        k_qq(sb.lambda_index, sb2.lambda_index) += x2 * w * y2;
      }
    }

    Eigen::MatrixXcd ck_pp = detail::real_times_complex(C, k_pp);
    Eigen::MatrixXcd ck_qq = detail::real_times_complex(C, k_qq);
    Eigen::VectorXcd d_pp = (ck_pp.array() * C.array()).rowwise().sum();
    Eigen::VectorXcd d_qq = (ck_qq.array() * C.array()).rowwise().sum();

    Eigen::MatrixXd d = build_D(gm);
    Eigen::MatrixXcd h_pq =
        detail::complex_times_real(detail::real_times_complex(C, k_pq), C.transpose());
    Eigen::MatrixXcd h_qp =
        detail::complex_times_real(detail::real_times_complex(C, k_qp), C.transpose());

    Eigen::VectorXcd total = detail::real_times_complex(gm.g, d_pp) + d_qq +
                             (d.cast<Complex>().array() * h_pq.transpose().array())
                                 .rowwise().sum().matrix() +
                             (d.cast<Complex>().array() * h_qp.array()).rowwise().sum().matrix();
    return Eigen::VectorXd(total.real().cwiseMax(0.0));
  };

  AveragedQuantumResult result;
  result.averaged = average_at(T);
  const long long ws = detail::drift_window_start(T);
  result.drift = 0.0;
  for (long long t : {ws, (ws + T) / 2}) {
    if (t >= T) continue;
    result.drift = std::max(result.drift,
                            (average_at(t) - result.averaged).lpNorm<Eigen::Infinity>());
  }
  result.converged = result.drift < convergence_tol;
  return result;
}

}  // namespace qwr
