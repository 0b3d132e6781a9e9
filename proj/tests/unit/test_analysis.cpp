#include <gtest/gtest.h>

#include "rotortree/analysis.hpp"
#include "rotortree/errors.hpp"

using namespace rotortree;

namespace {

const TreeParams k3(3);

ExactAmount q3(long num, unsigned long pow) { return ExactAmount(3, num, pow); }

}  // namespace

TEST(Contribution, SpecExamples) {
  KernelTable table(k3);
  RotorPolicy policy(k3);
  const Vertex x = make_vertex({1}, k3);

  EXPECT_TRUE(contribution(x, {}, policy, 5, table).is_zero());

  // One chip sent inward with three steps to go.
  const OddMove inward{2, 1, Direction{1}};
  EXPECT_EQ(contribution(x, std::span(&inward, 1), policy, 5, table), q3(4, 3));

  // Residue 2 starting at the inward arrow: one inward move, one outward move.
  const OddMove pair{2, 2, Direction{1}};
  EXPECT_EQ(contribution(x, std::span(&pair, 1), policy, 5, table), q3(2, 3));
  auto terms = contribution_terms(x, std::span(&pair, 1), policy, 5, table);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].move, Move::Inward);
  EXPECT_EQ(terms[0].value, q3(4, 3));
  EXPECT_EQ(terms[1].move, Move::Outward);
  EXPECT_EQ(terms[1].value, q3(-2, 3));
}

TEST(Contribution, RejectsBurstsAtOrAfterT) {
  KernelTable table(k3);
  RotorPolicy policy(k3);
  const OddMove late{5, 1, Direction{0}};
  try {
    contribution(make_vertex({0}, k3), std::span(&late, 1), policy, 5, table);
    FAIL() << "expected SchedulePastHorizon";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchedulePastHorizon);
  }
}

TEST(Contribution, OriginBurstsContributeNothing) {
  KernelTable table(k3);
  RotorPolicy policy(k3);
  const OddMove burst{0, 2, Direction{0}};
  EXPECT_TRUE(contribution(Vertex::origin(), std::span(&burst, 1), policy, 4, table).is_zero());
}

TEST(Decompose, MatchesDiscrepancy) {
  KernelTable table(k3);
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 1);
  c.set_even(true);
  auto traj = propp_run(c, 8);
  for (std::size_t T = 0; T <= 8; ++T) {
    auto d = decompose(traj, T, table);
    EXPECT_EQ(d.total, discrepancy(traj, T, Vertex::origin(), table)) << "T=" << T;
    ExactAmount by_sphere = ExactAmount::zero(3);
    for (const auto& [x, con] : d.per_sphere) by_sphere += con;
    EXPECT_EQ(by_sphere, d.total);
  }
  EXPECT_THROW(decompose(traj, 9, table), Error);
}

TEST(Decompose, MultiplesOfKContributeNothing) {
  KernelTable table(k3);
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 27);
  auto traj = propp_run(c, 3);
  auto d = decompose(traj, 3, table);
  EXPECT_TRUE(d.per_vertex.empty());
  EXPECT_TRUE(d.total.is_zero());
}

TEST(Divergence, TimesFollowTheParityRule) {
  for (std::size_t x = 1; x <= 10; ++x) EXPECT_EQ(divergence_time(x, 3), 3 * x);
  EXPECT_EQ(divergence_time(1, 4), 3u);
  EXPECT_EQ(divergence_time(2, 4), 4u);
  EXPECT_EQ(divergence_time(3, 4), 7u);
  EXPECT_EQ(divergence_time(4, 4), 8u);
  EXPECT_EQ(divergence_time(1, 5), 3u);
  EXPECT_EQ(divergence_time(2, 5), 4u);
  EXPECT_EQ(divergence_time(3, 5), 5u);
  EXPECT_EQ(divergence_time(4, 5), 8u);
  for (unsigned k = 3; k <= 9; ++k) {
    for (std::size_t x = 1; x <= 50; ++x) {
      const std::size_t t = divergence_time(x, k);
      EXPECT_EQ(t % 2, x % 2);
      EXPECT_GE(t * (k - 2), k * x);
      EXPECT_LT(t * (k - 2), k * x + 2 * (k - 2));
    }
  }
}

TEST(Divergence, SpecValidation) {
  EXPECT_THROW(make_divergence_spec(3, 5), Error);
  try {
    make_divergence_spec(2, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateK);
  }
  auto spec = make_divergence_spec(4, 6);
  EXPECT_EQ(spec.floor_radius, 3u);
  ASSERT_EQ(spec.spheres.size(), 2u);
  EXPECT_EQ(spec.spheres[1].t_x, 4u);
  EXPECT_TRUE(make_divergence_spec(3, 2).spheres.empty());
}

TEST(Divergence, ClosedSumValues) {
  EXPECT_EQ(divergence_analytic(make_divergence_spec(3, 2)), ExactAmount::zero(3));
  EXPECT_EQ(divergence_analytic(make_divergence_spec(3, 4)), q3(4, 2));
  EXPECT_EQ(divergence_analytic(make_divergence_spec(3, 6)), q3(188, 5));
  EXPECT_EQ(divergence_analytic(make_divergence_spec(3, 8)), q3(188, 5));
  EXPECT_EQ(divergence_analytic(make_divergence_spec(3, 10)), q3(6868, 8));
  EXPECT_EQ(divergence_analytic(make_divergence_spec(3, 12)), q3(75892, 10));
}

TEST(Divergence, SimulationMatchesClosedSum) {
  ForcingOptions options;
  options.mode = ForcingMode::AnalyticIncrement;
  for (unsigned k : {3u, 4u, 5u}) {
    for (std::size_t T : {2, 4, 6}) {
      auto spec = make_divergence_spec(k, T);
      EXPECT_EQ(simulate_divergence(spec, options).simulated, divergence_analytic(spec)) << "k=" << k << " T=" << T;
    }
  }
}

TEST(Divergence, SeriesMatchesDirectSums) {
  for (unsigned k : {3u, 4u, 5u}) {
    DivergenceSeries series(k, 200);
    for (std::size_t T = 0; T <= 200; T += 2) {
      EXPECT_EQ(series.discrepancy(T), divergence_analytic(make_divergence_spec(k, T))) << "k=" << k << " T=" << T;
    }
    EXPECT_THROW(series.discrepancy(202), Error);
    EXPECT_THROW(series.discrepancy(7), Error);
  }
}

TEST(Comparator, SmallValues) {
  EXPECT_EQ(lower_bound_comparator(3, 2), Decimal(0));
  EXPECT_NEAR(to_double(lower_bound_comparator(3, 6)), 0.116153904, 1e-9);
  DivergenceSeries series(3, 600);
  EXPECT_NEAR(to_double(series.comparator(600)), to_double(lower_bound_comparator(3, 600)), 1e-12);
  GrowthRow row = series.row(6);
  EXPECT_EQ(row.discrepancy, q3(188, 5));
  EXPECT_NEAR(to_double(row.ratio), 0.773662551440 / std::sqrt(18.0), 1e-12);
}

TEST(Convergence, ValidatesEpsilon) {
  EXPECT_THROW(convergence_series(3, 0, 4, 10), Error);
  EXPECT_THROW(convergence_series(3, 4, 4, 10), Error);
  EXPECT_THROW(convergence_series(3, 1, 0, 10), Error);
}

TEST(Convergence, PartialSumsIncrease) {
  ConvergenceSeries s = convergence_series(4, 1, 4, 100);
  ASSERT_EQ(s.lower_partial.size(), 100u);
  for (std::size_t i = 1; i < 100; ++i) {
    EXPECT_GE(s.lower_partial[i], s.lower_partial[i - 1]);
    EXPECT_GE(s.upper_partial[i], s.upper_partial[i - 1]);
    EXPECT_EQ(s.lower_times[i] % 2, (i + 1) % 2);
    EXPECT_EQ(s.upper_times[i] % 2, (i + 1) % 2);
  }
  // k=3, eps=1/2: the window around t = 3x is [1.5x, 4.5x].
  ConvergenceSeries h = convergence_series(3, 1, 2, 4);
  EXPECT_EQ(h.lower_times, (std::vector<std::size_t>{1, 2, 3, 6}));
  EXPECT_EQ(h.upper_times, (std::vector<std::size_t>{5, 10, 15, 18}));
}

TEST(SphereReport, CapsAndEmptySpheres) {
  KernelTable table(k3);
  ForcingOptions options;
  options.mode = ForcingMode::AnalyticIncrement;
  auto sim = simulate_divergence(make_divergence_spec(3, 6), options);
  auto traj = propp_run(sim.forcing.config, 6);
  auto dec = decompose(traj, 6, table);
  auto rows = sphere_report(dec, 4, sim.forcing.stats.total_chips, k3);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].con, q3(4, 2));
  EXPECT_EQ(rows[0].bound_static, q3(2, 0));
  for (const auto& row : rows) EXPECT_LE(row.con, row.bound_static);
  EXPECT_TRUE(rows[3].con.is_zero());
}

TEST(ChipCount, KnownRows) {
  const std::size_t radii[] = {0, 4, 8};
  auto rows = chip_count_experiment(3, radii);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].kappa, 0);
  EXPECT_TRUE(rows[0].discrepancy.is_zero());
  EXPECT_FALSE(rows[0].ratio);
  EXPECT_EQ(rows[1].kappa, 45);
  EXPECT_EQ(rows[2].kappa, 765);
  EXPECT_NEAR(to_double(*rows[1].ratio), 0.6587, 1e-4);
  EXPECT_NEAR(to_double(*rows[2].ratio), 0.7950, 1e-4);
}
