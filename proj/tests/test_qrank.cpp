#include <gtest/gtest.h>

#include <numbers>

#include "qwr/dense_oracle.hpp"
#include "qwr/graph.hpp"
#include "qwr/qrank.hpp"

using namespace qwr;
constexpr double kPi = std::numbers::pi;

namespace {

DirectedGraph random_graph(int n, double p, std::uint64_t seed) {
  return generate_erdos_renyi(n, {.p_edge = p, .seed = seed});
}

}  // namespace

TEST(SchemeMap, CanonicalPairs) {
  PhasePair standard = scheme_phase_map({SchemeKind::standard, 0.123});
  EXPECT_DOUBLE_EQ(standard.theta1, kPi);
  EXPECT_DOUBLE_EQ(standard.theta2, kPi);

  PhasePair equal = scheme_phase_map({SchemeKind::equal, kPi / 2});
  EXPECT_DOUBLE_EQ(equal.theta1, kPi / 2);
  EXPECT_DOUBLE_EQ(equal.theta2, kPi / 2);

  PhasePair opposite = scheme_phase_map({SchemeKind::opposite, kPi / 2});
  EXPECT_DOUBLE_EQ(opposite.theta1, kPi / 2);
  EXPECT_DOUBLE_EQ(opposite.theta2, -kPi / 2);

  PhasePair alternate = scheme_phase_map({SchemeKind::alternate, kPi / 100});
  EXPECT_DOUBLE_EQ(alternate.theta1, kPi);
  EXPECT_DOUBLE_EQ(alternate.theta2, kPi / 100);
}

TEST(InitialState, UniformGoogleGivesFlatAmplitudes) {
  GoogleMatrix gm = build_google(DirectedGraph(4, {{0, 1}}), 0.0);
  EdgeState psi0 = initial_state(gm);
  for (int e = 0; e < 16; ++e) EXPECT_NEAR(psi0[e].real(), 0.25, 1e-14);
}

TEST(InitialState, UnitNormAndEntrywiseFormula) {
  GoogleMatrix gm = build_google(DirectedGraph(2, {{0, 1}}), 0.85);
  EdgeState psi0 = initial_state(gm);
  EXPECT_NEAR(psi0.norm(), 1.0, 1e-12);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      EXPECT_NEAR(psi0[i * 2 + k].real(), std::sqrt(gm.g(k, i)) / std::sqrt(2.0), 1e-14);
}

TEST(Instantaneous, UniformAtTimeZero) {
  GoogleMatrix gm = build_google(DirectedGraph(5, {{1, 2}}), 0.0);
  Eigen::VectorXd row = instantaneous_pagerank(initial_state(gm), 5);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(row[i], 0.2, 1e-12);
}

// At t = 0 the marginal has the closed form I(i) = (1/n) sum_k G(i, k).
TEST(Instantaneous, ClosedFormOfInitialMarginal) {
  GoogleMatrix gm = build_google(random_graph(6, 0.3, 17), 0.85);
  Eigen::VectorXd direct = instantaneous_pagerank(initial_state(gm), 6);
  Eigen::VectorXd closed = gm.g.rowwise().sum() / 6.0;
  EXPECT_LT((direct - closed).lpNorm<Eigen::Infinity>(), 1e-12);
  EXPECT_NEAR(direct.sum(), 1.0, 1e-12);
}

TEST(Instantaneous, BasisStateIsIndicator) {
  EdgeState basis = EdgeState::Zero(9);
  basis[1 * 3 + 2] = 1.0;  // |1, 2>
  Eigen::VectorXd row = instantaneous_pagerank(basis, 3);
  EXPECT_DOUBLE_EQ(row[2], 1.0);
  EXPECT_DOUBLE_EQ(row[0] + row[1], 0.0);
}

TEST(Run, StandardSchemeEqualsExplicitPhases) {
  GoogleMatrix gm = build_google(random_graph(5, 0.4, 29), 0.85);
  auto by_scheme = run_quantum_pagerank(gm, {SchemeKind::standard, 0.7}, 200);
  auto by_phases = run_quantum_pagerank_phases(gm, {kPi, kPi}, 200);
  EXPECT_LT((by_scheme.averaged.values - by_phases.averaged.values).lpNorm<Eigen::Infinity>(),
            1e-14);
  EXPECT_LT((by_scheme.instantaneous - by_phases.instantaneous).cwiseAbs().maxCoeff(), 1e-14);
}

// Probabilities are real, so the conjugate walk produced by a negated theta
// yields the identical instantaneous series.
TEST(Run, OppositeSchemeThetaSignIrrelevant) {
  GoogleMatrix gm = build_google(random_graph(5, 0.3, 31), 0.85);
  auto plus = run_quantum_pagerank(gm, {SchemeKind::opposite, kPi / 2}, 150);
  auto minus = run_quantum_pagerank(gm, {SchemeKind::opposite, -kPi / 2}, 150);
  EXPECT_LT((plus.instantaneous - minus.instantaneous).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Run, RowsAreNormalizedDistributions) {
  GoogleMatrix gm = build_google(random_graph(6, 0.25, 37), 0.85);
  for (auto kind : {SchemeKind::standard, SchemeKind::equal, SchemeKind::opposite,
                    SchemeKind::alternate}) {
    auto run = run_quantum_pagerank(gm, {kind, kPi / 2}, 120);
    for (Eigen::Index t = 0; t < run.instantaneous.rows(); ++t) {
      EXPECT_NEAR(run.instantaneous.row(t).sum(), 1.0, 1e-9);
      EXPECT_GE(run.instantaneous.row(t).minCoeff(), -1e-12);
    }
  }
}

TEST(Run, AveragedEqualsColumnMean) {
  GoogleMatrix gm = build_google(random_graph(5, 0.35, 41), 0.85);
  auto run = run_quantum_pagerank(gm, {SchemeKind::alternate, kPi / 2}, 99);
  Eigen::VectorXd mean = run.instantaneous.colwise().mean();
  EXPECT_LT((run.averaged.values - mean).lpNorm<Eigen::Infinity>(), 1e-12);
  EXPECT_NEAR(run.averaged.values.sum(), 1.0, 1e-9);
}

TEST(Run, StdDevIsPopulationNormalized) {
  GoogleMatrix gm = build_google(random_graph(4, 0.4, 43), 0.85);
  auto run = run_quantum_pagerank(gm, {SchemeKind::standard, 0}, 50);
  for (int i = 0; i < 4; ++i) {
    double mean = run.instantaneous.col(i).mean();
    double acc = 0.0;
    for (Eigen::Index t = 0; t < run.instantaneous.rows(); ++t)
      acc += (run.instantaneous(t, i) - mean) * (run.instantaneous(t, i) - mean);
    EXPECT_NEAR(run.std_dev[i], std::sqrt(acc / run.instantaneous.rows()), 1e-12);
  }
}

TEST(Run, RejectsNonPositiveHorizon) {
  GoogleMatrix gm = build_google(DirectedGraph(2, {{0, 1}}), 0.85);
  EXPECT_THROW(run_quantum_pagerank(gm, {SchemeKind::standard, 0}, 0), std::domain_error);
}

// Standard-case recovery: the scheme must reproduce a dense simulation with
// the plain reflection 2 Pi - 1.
TEST(Run, StandardMatchesPlainSzegedyDense) {
  GoogleMatrix gm = build_google(random_graph(5, 0.4, 47), 0.85);
  auto run = run_quantum_pagerank(gm, {SchemeKind::standard, 0}, 60);

  const int n2 = 25;
  Eigen::MatrixXcd reflect =
      2.0 * dense::projector_matrix(gm) - Eigen::MatrixXcd::Identity(n2, n2);
  Eigen::MatrixXcd u = dense::swap_matrix(5) * reflect;
  Eigen::MatrixXcd w = u * u;
  EdgeState psi = initial_state(gm);
  for (int t = 0; t <= 60; ++t) {
    if (t > 0) psi = w * psi;
    Eigen::VectorXd row = instantaneous_pagerank(psi, 5);
    EXPECT_LT((row.transpose() - run.instantaneous.row(t)).lpNorm<Eigen::Infinity>(), 1e-10);
  }
}

TEST(ClosedForm, MatchesDirectAverageEverySchemeAndHorizon) {
  GoogleMatrix gm = build_google(random_graph(6, 0.3, 53), 0.85);
  for (auto kind : {SchemeKind::standard, SchemeKind::equal, SchemeKind::opposite,
                    SchemeKind::alternate}) {
    for (long long T : {1, 7, 250}) {
      APRScheme scheme{kind, kPi / 2};
      auto direct = run_quantum_pagerank(gm, scheme, T);
      auto closed = time_averaged_quantum_pagerank(gm, scheme_phase_map(scheme), T);
      EXPECT_LT((direct.averaged.values - closed.averaged).lpNorm<Eigen::Infinity>(), 1e-12)
          << scheme_label(kind) << " T=" << T;
    }
  }
}

TEST(ClosedForm, AlphaZeroAndDanglingEdgeCases) {
  DirectedGraph g(4, {{0, 1}, {1, 2}});
  for (double alpha : {0.0, 0.85, 1.0}) {
    GoogleMatrix gm = build_google(g, alpha);
    auto direct = run_quantum_pagerank(gm, {SchemeKind::opposite, kPi / 2}, 80);
    auto closed =
        time_averaged_quantum_pagerank(gm, scheme_phase_map({SchemeKind::opposite, kPi / 2}), 80);
    EXPECT_LT((direct.averaged.values - closed.averaged).lpNorm<Eigen::Infinity>(), 1e-12)
        << "alpha " << alpha;
  }
}

namespace {

// Recurrence time of the series: the first positive local maximum of the
// autocorrelation after its first zero crossing. Skipping the initial
// positive ramp ignores the fast period-2 ripple riding on the envelope.
int dominant_period(const Eigen::VectorXd& series, int max_lag) {
  Eigen::VectorXd centered = series.array() - series.mean();
  std::vector<double> ac(max_lag + 2);
  for (int lag = 0; lag < max_lag + 2; ++lag) {
    double acc = 0.0;
    for (Eigen::Index t = 0; t + lag < centered.size(); ++t)
      acc += centered[t] * centered[t + lag];
    ac[lag] = acc / double(centered.size() - lag);
  }
  int lag = 1;
  while (lag < max_lag && ac[lag] >= 0.0) ++lag;  // first zero crossing
  for (; lag + 1 < max_lag; ++lag) {
    if (ac[lag] > 0.0 && ac[lag] > ac[lag - 1] && ac[lag] > ac[lag + 1]) return lag;
  }
  return max_lag;
}

}  // namespace

// Dropping theta slows the fluctuation: on the 7-node fixture the dominant
// period of node 7's instantaneous series grows as theta shrinks.
TEST(Oscillation, AlternatePeriodGrowsAsThetaShrinks) {
  const char* dir = std::getenv("QWR_FIXTURES");
  if (!dir) GTEST_SKIP() << "QWR_FIXTURES not set";
  auto path = std::filesystem::path(dir) / "generic7.edges";
  if (!std::filesystem::exists(path)) GTEST_SKIP() << "generic7.edges not transcribed yet";

  GoogleMatrix gm = build_google(load_edge_list(path), 0.85);
  std::vector<int> periods;
  for (double theta : {kPi / 2, kPi / 10, kPi / 100}) {
    auto run = run_quantum_pagerank(gm, {SchemeKind::alternate, theta}, 4000);
    periods.push_back(dominant_period(run.instantaneous.col(6), 3000));
  }
  EXPECT_LT(periods[0], periods[1]);
  EXPECT_LT(periods[1], periods[2]);
}
