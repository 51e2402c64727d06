#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qwr/errors.hpp"
#include "qwr/google.hpp"

namespace qwr {

using Complex = std::complex<double>;

/// Walker state on the duplicated graph's edge space C^n (x) C^n.
/// Register 1 holds the source node, register 2 the target; the amplitude
/// of |i>_1 |j>_2 sits at flat index i*n + j.
using EdgeState = Eigen::VectorXcd;

/// The two rotation angles of W(theta1, theta2) = U(theta2) U(theta1),
/// normalized into (-pi, pi]. theta1 = theta2 = pi is the plain Szegedy walk.
struct PhasePair {
  double theta1;
  double theta2;

  PhasePair(double t1, double t2) : theta1(normalize(t1)), theta2(normalize(t2)) {}

  PhasePair conjugated() const { return PhasePair(-theta1, -theta2); }

  static double normalize(double theta) {
    double t = std::remainder(theta, 2.0 * std::numbers::pi);
    if (t <= -std::numbers::pi) t = std::numbers::pi;
    return t;
  }
};

inline Complex phase_factor(double theta) { return std::polar(1.0, theta); }

/// nu^t for unit-modulus nu, computed through the argument so that large t
/// does not amplify modulus roundoff.
inline Complex unit_power(Complex nu, long long t) {
  return std::polar(1.0, static_cast<double>(t) * std::arg(nu));
}

/// D(i, j) = sqrt(G(i, j) * G(j, i)), no summation. Symmetric by
/// construction with entries in [0, 1]; its spectrum lies in [-1, 1].
inline Eigen::MatrixXd build_D(const GoogleMatrix& gm) {
  const int n = gm.n;
  Eigen::MatrixXd d(n, n);
  for (int j = 0; j < n; ++j) {
    d(j, j) = gm.g(j, j);
    for (int i = j + 1; i < n; ++i) {
      double v = std::sqrt(gm.g(i, j) * gm.g(j, i));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

struct SymmetricEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // orthonormal columns, matching order
};

inline SymmetricEigen eig_sym(const Eigen::MatrixXd& d) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(d);
  if (solver.info() != Eigen::Success)
    throw numeric_error("eig_sym: symmetric eigensolver failed to converge");
  SymmetricEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// A|v> for the isometry A = sum_i |psi_i><i|: amplitude of |i>_1 |k>_2 is
/// v_i * sqrt(G(k, i)). Maps unit vectors to unit vectors.
inline EdgeState lift(const Eigen::VectorXd& v, const GoogleMatrix& gm) {
  const int n = gm.n;
  EdgeState out(n * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) out[i * n + k] = v[i] * std::sqrt(gm.g(k, i));
  }
  return out;
}

/// Swap of the two registers: (S psi)[(i, j)] = psi[(j, i)].
inline EdgeState apply_swap(const EdgeState& psi, int n) {
  EdgeState out(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i * n + j] = psi[j * n + i];
  }
  return out;
}

/// A† psi: component i is <psi_i | psi> = sum_k sqrt(G(k, i)) psi[(i, k)].
inline Eigen::VectorXcd project_onto_vertex_space(const EdgeState& psi, const GoogleMatrix& gm) {
  const int n = gm.n;
  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (int k = 0; k < n; ++k) acc += std::sqrt(gm.g(k, i)) * psi[i * n + k];
    out[i] = acc;
  }
  return out;
}

/// U(theta) psi = S([1 - e^{i theta}] Pi - 1) psi, applied in O(n^2) without
/// forming the n^2 x n^2 operator (Pi = A A†).
inline EdgeState apply_U(const GoogleMatrix& gm, double theta, const EdgeState& psi) {
  const int n = gm.n;
  const Complex c = 1.0 - phase_factor(theta);
  Eigen::VectorXcd u = project_onto_vertex_space(psi, gm);
  EdgeState tmp(n * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      tmp[i * n + k] = c * u[i] * std::sqrt(gm.g(k, i)) - psi[i * n + k];
    }
  }
  return apply_swap(tmp, n);
}

/// One step of W(theta1, theta2) = U(theta2) U(theta1).
inline EdgeState apply_W(const GoogleMatrix& gm, const PhasePair& phases, const EdgeState& psi) {
  return apply_U(gm, phases.theta2, apply_U(gm, phases.theta1, psi));
}

/// Both roots mu of -mu^2 = -e^{i theta} - [1 - e^{i theta}] mu lambda,
/// i.e. the U(theta) eigenvalues on the lambda block. Unit modulus.
inline std::pair<Complex, Complex> single_phase_eigenvalues(double lambda, double theta) {
  if (std::abs(lambda) > 1.0 + 1e-12)
    throw std::domain_error("single_phase_eigenvalues: |lambda| must be <= 1");
  const Complex c = 1.0 - phase_factor(theta);
  const Complex half = 0.5 * c * lambda;
  const Complex root = std::sqrt(half * half + phase_factor(theta));
  return {half + root, half - root};
}

/// One W(theta1, theta2) eigenpair on a lambda block in the ansatz form
/// |nu> = |lambda~> - a S|lambda~>.
struct BlockEigenpair {
  Complex nu;
  Complex a;
};

namespace detail {

// Entries of W restricted to the (non-orthogonal) basis {|lambda~>, S|lambda~>}:
//   W |lambda~>   = e^{i th1} |lambda~> - C2 lambda e^{i th1} S|lambda~>
//   W S|lambda~>  = -C1 lambda |lambda~> + (e^{i th2} + C1 C2 lambda^2) S|lambda~>
// with C_k = 1 - e^{i th_k}. Its determinant is e^{i(th1 + th2)} exactly.
struct BlockMatrix {
  Complex m11, m12, m21, m22;

  static BlockMatrix build(double lambda, const PhasePair& ph) {
    const Complex e1 = phase_factor(ph.theta1);
    const Complex e2 = phase_factor(ph.theta2);
    const Complex c1 = 1.0 - e1;
    const Complex c2 = 1.0 - e2;
    return {e1, -c1 * lambda, -c2 * lambda * e1, e2 + c1 * c2 * lambda * lambda};
  }

  Eigen::Vector2cd apply(const Eigen::Vector2cd& x) const {
    return {m11 * x[0] + m12 * x[1], m21 * x[0] + m22 * x[1]};
  }
};

// Gram matrix of the block basis is [[1, lambda], [lambda, 1]].
inline Complex block_inner(double lambda, const Eigen::Vector2cd& u, const Eigen::Vector2cd& v) {
  return std::conj(u[0]) * (v[0] + lambda * v[1]) + std::conj(u[1]) * (lambda * v[0] + v[1]);
}

inline double block_norm(double lambda, const Eigen::Vector2cd& v) {
  return std::sqrt(std::max(0.0, block_inner(lambda, v, v).real()));
}

}  // namespace detail

/// Solves the quadratic for the ansatz parameter a obtained by substituting
/// nu = e^{i th1} + C1 a lambda into the second eigenvalue equation:
///   (C1 lambda) a^2 + (e^{i th1} - e^{i th2} - C1 C2 lambda^2) a - C2 lambda e^{i th1} = 0.
/// Returns two pairs in the generic case; one when the quadratic degenerates
/// to a linear equation or its roots coincide. When every coefficient
/// vanishes the block matrix is scalar and the +-e^{i th1 / 2} branches are
/// returned, matching the single-phase roots. For theta1 = theta2 the
/// eigenvalues are exactly mu_theta^2.
inline std::vector<BlockEigenpair> block_eigensolve(double lambda, const PhasePair& phases) {
  if (std::abs(lambda) > 1.0 + 1e-12)
    throw std::domain_error("block_eigensolve: |lambda| must be <= 1");
  const Complex e1 = phase_factor(phases.theta1);
  const Complex e2 = phase_factor(phases.theta2);
  const Complex c1 = 1.0 - e1;
  const Complex c2 = 1.0 - e2;

  const Complex qa = c1 * lambda;
  const Complex qb = e1 - e2 - c1 * c2 * lambda * lambda;
  const Complex qc = -c2 * lambda * e1;
  const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});

  auto make = [&](Complex a) { return BlockEigenpair{e1 + c1 * a * lambda, a}; };

  if (scale < 1e-14) {
    // Scalar block matrix: any vector is an eigenvector with nu = e^{i th1}.
    const Complex branch = std::polar(1.0, phases.theta1 / 2.0);
    return {make(branch), make(-branch)};
  }
  if (std::abs(qa) < 1e-14 * scale) {
    return {make(-qc / qb)};
  }

  const Complex disc = qb * qb - 4.0 * qa * qc;
  if (std::abs(disc) < 1e-12 * scale * scale) {
    return {make(-qb / (2.0 * qa))};
  }
  Complex root = std::sqrt(disc);
  if ((std::conj(qb) * root).real() > 0.0) root = -root;  // |qb - root| maximized
  const Complex a1 = (-qb + root) / (2.0 * qa);
  // Vieta for the companion root; avoids cancellation when |a1| dominates.
  const Complex a2 = (std::abs(a1) > 0.0) ? qc / (qa * a1) : -qb / qa;
  return {make(a1), make(a2)};
}

/// One eigenpair of W on a lambda block, described by coordinates in the
/// basis {|lambda~>, S|lambda~>}; the edge-space eigenvector is
/// coord[0] |lambda~> + coord[1] S|lambda~>, normalized.
struct BlockSolution {
  int lambda_index;
  Complex nu;
  Eigen::Vector2cd coord;
};

namespace detail {

inline constexpr double kCollapseTol = 1e-9;     // |lambda| = 1 within this: 1-D block
inline constexpr double kDegenerateTol = 1e-8;   // |nu1 - nu2| below this: repeated nu

// B-orthonormal completion of x inside the block.
inline Eigen::Vector2cd block_complement(double lambda, const Eigen::Vector2cd& x) {
  Eigen::Vector2cd best;
  double best_norm = -1.0;
  for (Eigen::Vector2cd y : {Eigen::Vector2cd{1.0, 0.0}, Eigen::Vector2cd{0.0, 1.0}}) {
    Eigen::Vector2cd z = y - block_inner(lambda, x, y) * x;
    double nz = block_norm(lambda, z);
    if (nz > best_norm) {
      best_norm = nz;
      best = z;
    }
  }
  if (best_norm <= 0.0) throw numeric_error("block_complement: degenerate block basis");
  return best / best_norm;
}

// Full solution of a non-collapsed block: exactly two B-orthonormal
// eigenpairs. W restricted to the block is unitary in the B inner product,
// hence normal: whenever the second ansatz root is unusable (degenerate or
// linear case), the B-orthogonal complement of the first eigenvector is
// itself the second eigenvector, with its eigenvalue given by the Rayleigh
// quotient. That route is exact even when the eigenvalues nearly coincide.
inline std::vector<BlockSolution> solve_block(int lambda_index, double lambda,
                                              const PhasePair& phases) {
  const BlockMatrix m = BlockMatrix::build(lambda, phases);

  auto normalized = [&](Eigen::Vector2cd x) {
    double nx = block_norm(lambda, x);
    if (nx < 1e-12) throw numeric_error("solve_block: eigenvector collapsed, lambda=" +
                                        std::to_string(lambda));
    return Eigen::Vector2cd(x / nx);
  };

  std::vector<BlockSolution> out;
  auto pairs = block_eigensolve(lambda, phases);
  const Eigen::Vector2cd x1 = normalized({1.0, -pairs[0].a});
  out.push_back({lambda_index, pairs[0].nu, x1});

  if (pairs.size() == 2 && std::abs(pairs[1].nu - pairs[0].nu) > kDegenerateTol) {
    out.push_back({lambda_index, pairs[1].nu, normalized({1.0, -pairs[1].a})});
  } else {
    Eigen::Vector2cd x2 = block_complement(lambda, x1);
    Complex nu2 = block_inner(lambda, x2, m.apply(x2));
    out.push_back({lambda_index, nu2, x2});
  }

  for (const auto& sol : out) {
    Eigen::Vector2cd r = m.apply(sol.coord) - sol.nu * sol.coord;
    if (block_norm(lambda, r) > 1e-9)
      throw numeric_error("solve_block: residual above tolerance at lambda=" +
                          std::to_string(lambda));
  }
  return out;
}

}  // namespace detail

/// Coordinate form of the Appendix-style decomposition: eigenvalues of D,
/// its orthonormal eigenvectors, and per-block W eigenpairs. Holds O(n^2)
/// memory; enough to evaluate time averages without edge-space vectors.
struct BlockDecomposition {
  PhasePair phases{std::numbers::pi, std::numbers::pi};
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd d_vectors;
  std::vector<BlockSolution> solutions;  // grouped by lambda index, ascending
};

/// Overload reusing a precomputed eigensystem of D; sweeps and multi-scheme
/// runs share one eig_sym per Google matrix.
inline BlockDecomposition decompose_blocks(const GoogleMatrix& gm, const PhasePair& phases,
                                           SymmetricEigen eig) {
  BlockDecomposition dec;
  dec.phases = phases;
  dec.lambdas = std::move(eig.values);
  dec.d_vectors = std::move(eig.vectors);
  const Complex nu_collapsed = phase_factor(phases.theta1 + phases.theta2);
  for (int m = 0; m < gm.n; ++m) {
    double lambda = dec.lambdas[m];
    if (std::abs(lambda) >= 1.0 - detail::kCollapseTol) {
      // S|lambda~> = +-|lambda~>: the block is one-dimensional.
      dec.solutions.push_back({m, nu_collapsed, {1.0, 0.0}});
    } else {
      auto block = detail::solve_block(m, lambda, phases);
      dec.solutions.insert(dec.solutions.end(), block.begin(), block.end());
    }
  }
  return dec;
}

inline BlockDecomposition decompose_blocks(const GoogleMatrix& gm, const PhasePair& phases) {
  return decompose_blocks(gm, phases, eig_sym(build_D(gm)));
}

/// Spectral decomposition of W restricted to the dynamical subspace
/// span{|lambda~>, S|lambda~>}, with the initial state projected onto it.
/// Stores at most 2n edge-space eigenvectors (O(n^3) memory total).
struct SpectralDecomposition {
  int n = 0;
  PhasePair phases{std::numbers::pi, std::numbers::pi};
  Eigen::VectorXd lambdas;           // eigenvalues of D, descending
  Eigen::MatrixXd d_vectors;         // orthonormal eigenvectors of D
  std::vector<Complex> nus;          // unit-modulus eigenvalues of W
  std::vector<int> block_index;      // lambda index per eigenpair
  Eigen::MatrixXcd vectors;          // n^2 x M orthonormal eigenvectors
  Eigen::VectorXcd coeffs;           // <nu | psi0>
  EdgeState ortho;                   // psi0 minus its dynamical projection

  int size() const { return static_cast<int>(nus.size()); }
};

/// Builds the per-block eigenpairs, materializes them in edge space, and
/// projects psi0. Every stored eigenpair is verified against direct operator
/// application: ||W|nu> - nu|nu>|| < 1e-9, else a numeric_error names the
/// offending lambda.
inline SpectralDecomposition decompose(const GoogleMatrix& gm, const PhasePair& phases,
                                       const EdgeState& psi0) {
  const int n = gm.n;
  if (psi0.size() != static_cast<Eigen::Index>(n) * n)
    throw std::domain_error("decompose: psi0 has wrong dimension");

  BlockDecomposition blocks = decompose_blocks(gm, phases);
  const int m_count = static_cast<int>(blocks.solutions.size());

  SpectralDecomposition dec;
  dec.n = n;
  dec.phases = phases;
  dec.lambdas = std::move(blocks.lambdas);
  dec.d_vectors = std::move(blocks.d_vectors);
  dec.nus.reserve(m_count);
  dec.block_index.reserve(m_count);
  dec.vectors.resize(static_cast<Eigen::Index>(n) * n, m_count);

  int col = 0;
  int last_lambda = -1;
  EdgeState lifted, swapped;
  for (const auto& sol : blocks.solutions) {
    if (sol.lambda_index != last_lambda) {
      lifted = lift(dec.d_vectors.col(sol.lambda_index), gm);
      swapped = apply_swap(lifted, n);
      last_lambda = sol.lambda_index;
    }
    dec.vectors.col(col) = sol.coord[0] * lifted + sol.coord[1] * swapped;
    Complex nu = sol.nu;
    if (std::abs(dec.lambdas[sol.lambda_index]) >= 1.0 - detail::kCollapseTol) {
      // Collapsed block: take the eigenvalue from the operator itself.
      nu = dec.vectors.col(col).dot(apply_W(gm, phases, dec.vectors.col(col)));
    }
    dec.nus.push_back(nu);
    dec.block_index.push_back(sol.lambda_index);
    ++col;
  }

  for (int b = 0; b < m_count; ++b) {
    EdgeState residual = apply_W(gm, phases, dec.vectors.col(b)) - dec.nus[b] * dec.vectors.col(b);
    if (residual.norm() > 1e-9)
      throw numeric_error("decompose: eigenpair residual above tolerance at lambda=" +
                          std::to_string(dec.lambdas[dec.block_index[b]]));
  }

  dec.coeffs = dec.vectors.adjoint() * psi0;
  dec.ortho = psi0 - dec.vectors * dec.coeffs;
  return dec;
}

/// |psi_f(t)> = sum_b nu_b^t <nu_b|psi0> |nu_b> + orthogonal part (W acts as
/// the identity outside the dynamical subspace).
inline EdgeState evolve(const SpectralDecomposition& dec, long long t) {
  if (t < 0) throw std::domain_error("evolve: t must be >= 0");
  Eigen::VectorXcd phased(dec.size());
  for (int b = 0; b < dec.size(); ++b) phased[b] = unit_power(dec.nus[b], t) * dec.coeffs[b];
  return dec.vectors * phased + dec.ortho;
}

}  // namespace qwr
