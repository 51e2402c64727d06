#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qwr/classical.hpp"
#include "qwr/errors.hpp"
#include "qwr/google.hpp"
#include "qwr/graph.hpp"
#include "qwr/parallel.hpp"
#include "qwr/qrank.hpp"
#include "qwr/rng.hpp"

namespace qwr {

/// Bhattacharyya overlap f = sum_i sqrt(I1(i) I2(i)) between two PageRank
/// distributions; 1 for identical distributions, 0 for disjoint supports.
inline double fidelity(const Eigen::VectorXd& i1, const Eigen::VectorXd& i2) {
  if (i1.size() != i2.size()) throw std::domain_error("fidelity: length mismatch");
  if (std::abs(i1.sum() - 1.0) > 1e-9 || std::abs(i2.sum() - 1.0) > 1e-9)
    throw std::domain_error("fidelity: inputs must sum to 1");
  double f = 0.0;
  for (Eigen::Index i = 0; i < i1.size(); ++i)
    f += std::sqrt(std::max(0.0, i1[i]) * std::max(0.0, i2[i]));
  return f;
}

/// Node ids sorted by descending importance; ties broken by ascending id.
inline std::vector<int> rank_nodes(const Eigen::VectorXd& importance) {
  std::vector<int> ids(importance.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(),
                   [&](int a, int b) { return importance[a] > importance[b]; });
  return ids;
}

/// Start of the trailing plateau of a descending sequence: the largest
/// suffix whose values all lie within rel_tol (relative) of the minimum.
/// A suffix of length <= 1 is not a plateau.
inline std::optional<int> degenerate_tail(const Eigen::VectorXd& sorted_desc, double rel_tol) {
  const auto n = sorted_desc.size();
  if (n < 2) return std::nullopt;
  const double min_value = sorted_desc[n - 1];
  Eigen::Index start = n - 1;
  while (start > 0 && sorted_desc[start - 1] - min_value <= rel_tol * std::abs(min_value))
    --start;
  if (n - start <= 1) return std::nullopt;
  return static_cast<int>(start);
}

/// Least-squares fit of log I ~ -beta log(i) over the sorted distribution
/// (1-based rank index, natural logs). beta is reported positive for a
/// decaying distribution.
struct PowerLawFit {
  double beta = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  std::optional<int> cut_index;  // first excluded index, when a tail was cut
};

inline PowerLawFit powerlaw_fit(const Eigen::VectorXd& importance, bool use_tail_cut,
                                double rel_tol = 1e-6) {
  Eigen::VectorXd sorted = importance;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
  if (sorted.size() < 2) throw std::domain_error("powerlaw_fit: need at least 2 values");
  if (sorted[sorted.size() - 1] <= 0.0)
    throw std::domain_error("powerlaw_fit: importances must be positive");

  PowerLawFit fit;
  Eigen::Index m = sorted.size();
  if (use_tail_cut) {
    fit.cut_index = degenerate_tail(sorted, rel_tol);
    if (fit.cut_index) m = *fit.cut_index;
  }
  if (m < 2) throw numeric_error("powerlaw_fit: degenerate distribution, no fit region");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    double x = std::log(double(i + 1));
    double y = std::log(sorted[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - slope * sx) / m;
  fit.beta = -slope;

  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / m;
  for (Eigen::Index i = 0; i < m; ++i) {
    double x = std::log(double(i + 1));
    double y = std::log(sorted[i]);
    ss_res += (y - (fit.intercept + slope * x)) * (y - (fit.intercept + slope * x));
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  fit.r_squared = (ss_tot > 0.0) ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return fit;
}

/// Which ranking algorithm a sweep or ensemble runs.
struct AlgorithmSpec {
  bool classical = true;
  APRScheme scheme{};

  std::string label() const { return classical ? "classical" : scheme_label(scheme.kind); }
};

struct SweepOptions {
  long long T = 1000;              // quantum horizon inside sweeps
  double convergence_tol = 1e-4;
  double classical_tol = 1e-12;
  int classical_max_iter = 10000;
  int threads = 1;
};

/// Distribution of one algorithm on one graph at one damping value; sums
/// to 1 exactly (renormalized) so fidelities have clean fixed points.
inline Eigen::VectorXd pagerank_distribution(const DirectedGraph& g, const AlgorithmSpec& spec,
                                             double alpha, const SweepOptions& opts,
                                             int* non_converged = nullptr) {
  GoogleMatrix gm = build_google(g, alpha);
  Eigen::VectorXd values;
  if (spec.classical) {
    values = classical_pagerank(gm, opts.classical_tol, opts.classical_max_iter).values;
  } else {
    auto run = time_averaged_quantum_pagerank(gm, scheme_phase_map(spec.scheme), opts.T,
                                              opts.convergence_tol);
    if (non_converged && !run.converged) ++*non_converged;
    values = run.averaged;
  }
  return values / values.sum();
}

/// Per-algorithm distributions over a damping grid. One eig_sym of D is
/// shared by every quantum scheme at a given alpha.
inline std::vector<std::vector<Eigen::VectorXd>> sweep_distributions(
    const DirectedGraph& g, const std::vector<AlgorithmSpec>& specs,
    const std::vector<double>& grid, const SweepOptions& opts,
    std::vector<std::vector<int>>* non_converged = nullptr) {
  for (double a : grid) {
    if (a <= 0.0 || a >= 1.0) throw std::domain_error("sweep grid must lie inside (0,1)");
  }
  std::vector<std::vector<Eigen::VectorXd>> out(specs.size());
  for (auto& row : out) row.resize(grid.size());
  if (non_converged) non_converged->assign(specs.size(), std::vector<int>(grid.size(), 0));

  parallel_for(static_cast<int>(grid.size()), opts.threads, [&](int k) {
    GoogleMatrix gm = build_google(g, grid[k]);
    std::optional<SymmetricEigen> eig;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      Eigen::VectorXd values;
      if (specs[s].classical) {
        values = classical_pagerank(gm, opts.classical_tol, opts.classical_max_iter).values;
      } else {
        if (!eig) eig = eig_sym(build_D(gm));
        auto run = time_averaged_quantum_pagerank(gm, scheme_phase_map(specs[s].scheme), opts.T,
                                                  opts.convergence_tol, &*eig);
        if (non_converged && !run.converged) (*non_converged)[s][k] = 1;
        values = run.averaged;
      }
      out[s][k] = values / values.sum();
    }
  });
  return out;
}

/// Fidelity-vs-alpha curve against the alpha_ref distribution, plus the
/// optional all-pairs fidelity matrix.
struct StabilityReport {
  std::vector<double> alphas;
  double alpha_ref = 0.85;
  Eigen::VectorXd fidelities;             // f(I(alpha), I(alpha_ref))
  std::optional<Eigen::MatrixXd> heatmap; // f(I(alpha_a), I(alpha_b))
  std::vector<int> non_converged;         // per grid point (quantum only)
};

inline StabilityReport alpha_sweep(const DirectedGraph& g, const AlgorithmSpec& spec,
                                   const std::vector<double>& grid, double alpha_ref = 0.85,
                                   const SweepOptions& opts = {}, bool with_heatmap = false) {
  std::vector<std::vector<int>> flags;
  auto dists = sweep_distributions(g, {spec}, grid, opts, &flags);
  Eigen::VectorXd ref = pagerank_distribution(g, spec, alpha_ref, opts);

  StabilityReport report;
  report.alphas = grid;
  report.alpha_ref = alpha_ref;
  report.non_converged = flags[0];
  report.fidelities.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    report.fidelities[k] = fidelity(dists[0][k], ref);
  if (with_heatmap) {
    Eigen::MatrixXd m(grid.size(), grid.size());
    for (std::size_t a = 0; a < grid.size(); ++a) {
      for (std::size_t b = a; b < grid.size(); ++b) {
        double f = fidelity(dists[0][a], dists[0][b]);
        m(a, b) = f;
        m(b, a) = f;
      }
    }
    report.heatmap = std::move(m);
  }
  return report;
}

inline Eigen::MatrixXd fidelity_heatmap(const DirectedGraph& g, const AlgorithmSpec& spec,
                                        const std::vector<double>& grid,
                                        const SweepOptions& opts = {}) {
  return *alpha_sweep(g, spec, grid, 0.85, opts, true).heatmap;
}

/// Damping grid start..stop inclusive with the given step; values are
/// rounded to 12 decimals so canonical points like 0.85 land exactly.
inline std::vector<double> make_alpha_grid(double start, double stop, double step) {
  if (step <= 0.0) throw std::domain_error("make_alpha_grid: step must be > 0");
  std::vector<double> grid;
  int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (int k = 0; k < count; ++k) {
    double v = std::round((start + k * step) * 1e12) / 1e12;
    grid.push_back(v);
  }
  return grid;
}

struct GeneratorConfig {
  enum class Model { scale_free, erdos_renyi };
  Model model = Model::scale_free;
  int nodes = 32;
  ScaleFreeParams scale_free{};
  ErdosRenyiParams erdos_renyi{};
};

inline DirectedGraph generate_graph(const GeneratorConfig& config, std::uint64_t seed) {
  if (config.model == GeneratorConfig::Model::scale_free) {
    ScaleFreeParams p = config.scale_free;
    p.seed = seed;
    return generate_scale_free(config.nodes, p);
  }
  ErdosRenyiParams p = config.erdos_renyi;
  p.seed = seed;
  return generate_erdos_renyi(config.nodes, p);
}

/// What an ensemble computes per member graph.
struct EnsemblePipeline {
  std::vector<AlgorithmSpec> algorithms;
  double alpha = 0.85;
  long long T = 1000;
  double convergence_tol = 1e-4;
  bool mean_sorted = true;       // mean of descending-sorted distributions
  bool std_dev = false;          // mean per-node standard deviations (direct runs)
  bool sweep = false;            // mean fidelity-vs-alpha curves
  bool heatmap = false;          // mean all-pairs fidelity matrices
  std::vector<double> grid;      // damping grid for sweep/heatmap
  double alpha_ref = 0.85;
};

struct EnsembleReport {
  int count = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::string> labels;                  // per algorithm
  std::vector<Eigen::VectorXd> mean_sorted;         // per algorithm, length n
  std::vector<Eigen::VectorXd> mean_std_dev;        // per algorithm (quantum only)
  std::vector<Eigen::VectorXd> mean_fidelity_curve; // per algorithm, grid length
  std::vector<Eigen::MatrixXd> mean_heatmap;        // per algorithm
  std::vector<double> alphas;
  std::vector<int> non_converged;                   // per algorithm, total runs over tol
};

/// Runs the pipeline on `count` graphs seeded by derive_seed(master_seed, i)
/// and averages the results. Members run in parallel; aggregation follows
/// ascending graph index, so the report does not depend on scheduling.
inline EnsembleReport ensemble_run(const GeneratorConfig& config, int count,
                                   std::uint64_t master_seed, const EnsemblePipeline& pipeline,
                                   int threads = 1) {
  if (count < 1) throw std::domain_error("ensemble_run: count must be >= 1");
  const auto& algos = pipeline.algorithms;
  const std::size_t n_algo = algos.size();

  struct MemberResult {
    std::vector<Eigen::VectorXd> sorted;
    std::vector<Eigen::VectorXd> std_dev;
    std::vector<Eigen::VectorXd> curve;
    std::vector<Eigen::MatrixXd> heatmap;
    std::vector<int> non_converged;
  };
  std::vector<MemberResult> members(count);

  SweepOptions opts;
  opts.T = pipeline.T;
  opts.convergence_tol = pipeline.convergence_tol;
  opts.threads = 1;  // parallelism lives at the member level

  parallel_for(count, threads, [&](int g_index) {
    try {
      DirectedGraph graph = generate_graph(config, derive_seed(master_seed, g_index));
      MemberResult& member = members[g_index];
      member.non_converged.assign(n_algo, 0);

      if (pipeline.mean_sorted || pipeline.std_dev) {
        GoogleMatrix gm = build_google(graph, pipeline.alpha);
        std::optional<SymmetricEigen> eig;
        for (std::size_t s = 0; s < n_algo; ++s) {
          Eigen::VectorXd values;
          Eigen::VectorXd stddev;
          if (algos[s].classical) {
            values = classical_pagerank(gm).values;
          } else if (pipeline.std_dev) {
            auto run = run_quantum_pagerank(gm, algos[s].scheme, pipeline.T,
                                            pipeline.convergence_tol);
            if (!run.converged) ++member.non_converged[s];
            values = run.averaged.values;
            stddev = run.std_dev;
          } else {
            if (!eig) eig = eig_sym(build_D(gm));
            auto run = time_averaged_quantum_pagerank(gm, scheme_phase_map(algos[s].scheme),
                                                      pipeline.T, pipeline.convergence_tol,
                                                      &*eig);
            if (!run.converged) ++member.non_converged[s];
            values = run.averaged;
          }
          values /= values.sum();
          if (pipeline.mean_sorted) {
            Eigen::VectorXd sorted = values;
            std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
            member.sorted.push_back(std::move(sorted));
          }
          if (pipeline.std_dev)
            member.std_dev.push_back(stddev.size() ? stddev
                                                   : Eigen::VectorXd::Zero(graph.node_count()));
        }
      }

      if (pipeline.sweep || pipeline.heatmap) {
        std::vector<std::vector<int>> flags;
        auto dists = sweep_distributions(graph, algos, pipeline.grid, opts, &flags);
        for (std::size_t s = 0; s < n_algo; ++s) {
          for (int f : flags[s]) member.non_converged[s] += f;
          if (pipeline.sweep) {
            Eigen::VectorXd ref = pagerank_distribution(graph, algos[s], pipeline.alpha_ref, opts);
            Eigen::VectorXd curve(pipeline.grid.size());
            for (std::size_t k = 0; k < pipeline.grid.size(); ++k)
              curve[k] = fidelity(dists[s][k], ref);
            member.curve.push_back(std::move(curve));
          }
          if (pipeline.heatmap) {
            Eigen::MatrixXd m(pipeline.grid.size(), pipeline.grid.size());
            for (std::size_t a = 0; a < pipeline.grid.size(); ++a) {
              for (std::size_t b = a; b < pipeline.grid.size(); ++b) {
                double f = fidelity(dists[s][a], dists[s][b]);
                m(a, b) = f;
                m(b, a) = f;
              }
            }
            member.heatmap.push_back(std::move(m));
          }
        }
      }
    } catch (const std::exception& e) {
      throw numeric_error("ensemble member (seed index " + std::to_string(g_index) +
                          ") failed: " + e.what());
    }
  });

  EnsembleReport report;
  report.count = count;
  report.master_seed = master_seed;
  report.alphas = pipeline.grid;
  report.non_converged.assign(n_algo, 0);
  for (std::size_t s = 0; s < n_algo; ++s) report.labels.push_back(algos[s].label());

  auto average = [&](auto accessor, auto& dest) {
    for (std::size_t s = 0; s < n_algo; ++s) {
      auto acc = accessor(members[0], s);
      for (int g = 1; g < count; ++g) acc += accessor(members[g], s);
      acc /= double(count);
      dest.push_back(std::move(acc));
    }
  };
  if (pipeline.mean_sorted)
    average([](const MemberResult& m, std::size_t s) { return m.sorted[s]; },
            report.mean_sorted);
  if (pipeline.std_dev)
    average([](const MemberResult& m, std::size_t s) { return m.std_dev[s]; },
            report.mean_std_dev);
  if (pipeline.sweep)
    average([](const MemberResult& m, std::size_t s) { return m.curve[s]; },
            report.mean_fidelity_curve);
  if (pipeline.heatmap)
    average([](const MemberResult& m, std::size_t s) { return m.heatmap[s]; },
            report.mean_heatmap);
  for (const auto& member : members) {
    for (std::size_t s = 0; s < n_algo; ++s) report.non_converged[s] += member.non_converged[s];
  }
  return report;
}

}  // namespace qwr
