#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rotortree/analysis.hpp"
#include "rotortree/errors.hpp"
#include "rotortree/machines.hpp"

using namespace rotortree;

namespace {

const TreeParams k3(3);

Vertex v3(std::initializer_list<unsigned> letters) { return make_vertex(letters, k3); }

}  // namespace

TEST(OutflowSplit, DealsChipsAlongTheCycle) {
  const std::vector<unsigned> seq{0, 1, 2};
  auto s = outflow_split(5, Direction{0}, seq);
  EXPECT_EQ(s.counts, (std::vector<BigInt>{2, 2, 1}));
  EXPECT_EQ(s.new_rotor.index, 2u);

  auto from_two = outflow_split(4, Direction{2}, seq);
  EXPECT_EQ(from_two.counts, (std::vector<BigInt>{1, 1, 2}));
  EXPECT_EQ(from_two.new_rotor.index, 0u);

  auto none = outflow_split(0, Direction{1}, seq);
  EXPECT_EQ(none.counts, (std::vector<BigInt>{0, 0, 0}));
  EXPECT_EQ(none.new_rotor.index, 1u);

  const std::vector<unsigned> odd{2, 0, 1};
  auto custom = outflow_split(BigInt("1000000000000000000001"), Direction{0}, odd);
  EXPECT_EQ(custom.counts[0] + custom.counts[1] + custom.counts[2], BigInt("1000000000000000000001"));
  EXPECT_EQ(custom.new_rotor.index, 2u);
}

TEST(RotorPolicy, CustomCycles) {
  RotorPolicy policy(k3);
  EXPECT_EQ(policy.advance(v3({0}), Direction{2}, 1).index, 0u);
  policy.set_sequence(v3({0}), {2, 1, 0});
  EXPECT_EQ(policy.advance(v3({0}), Direction{2}, 1).index, 1u);
  EXPECT_EQ(policy.position(v3({0}), Direction{0}), 2u);
  EXPECT_EQ(policy.advance(v3({1}), Direction{2}, 4).index, 0u);
  EXPECT_THROW(policy.set_sequence(v3({0}), {0, 0, 1}), Error);
  EXPECT_THROW(policy.set_sequence(v3({0}), {0, 1}), Error);
  policy.set_sequence(v3({0}), {0, 1, 2});
  EXPECT_FALSE(policy.has_overrides());
}

TEST(DefaultRotor, Rules) {
  EXPECT_EQ(default_direction(Vertex::origin(), DefaultRotor::Canonical).index, 0u);
  EXPECT_EQ(default_direction(v3({0}), DefaultRotor::Canonical).index, 1u);
  EXPECT_EQ(default_direction(v3({2}), DefaultRotor::Canonical).index, 0u);
  EXPECT_EQ(default_direction(v3({0, 2}), DefaultRotor::TowardOrigin).index, 2u);
  EXPECT_EQ(default_direction(Vertex::origin(), DefaultRotor::TowardOrigin).index, 0u);
}

TEST(ProppConfig, ValidatesChipsAndParity) {
  ProppConfig c(k3);
  EXPECT_THROW(c.set_chips(Vertex::origin(), -1), Error);
  c.set_chips(v3({0}), 2);
  try {
    c.set_even(true);
    FAIL() << "odd-depth chips accepted as even";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParityViolation);
  }
  c.set_chips(v3({0}), 0);
  EXPECT_EQ(c.occupied(), 0u);
  c.set_even(true);
  EXPECT_THROW(c.set_chips(v3({1}), 1), Error);
  c.add_chips(v3({1, 2}), 4);
  c.add_chips(v3({1, 2}), 1);
  EXPECT_EQ(c.chips_at(v3({1, 2})), 5);
  EXPECT_EQ(c.total_chips(), 5);
}

TEST(ProppStep, FullCycleAtTheOrigin) {
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 3);
  ProppConfig next = propp_step(c);
  for (unsigned d = 0; d < 3; ++d) EXPECT_EQ(next.chips_at(v3({d})), 1);
  EXPECT_EQ(next.rotor_at(Vertex::origin()), c.rotor_at(Vertex::origin()));
  EXPECT_FALSE(next.even());
}

TEST(ProppStep, SingleChipFollowsTheRotor) {
  ProppConfig c(k3);
  c.set_chips(v3({1}), 1);
  c.set_rotor(v3({1}), Direction{1});
  ProppConfig next = propp_step(c);
  EXPECT_EQ(next.chips_at(Vertex::origin()), 1);
  EXPECT_EQ(next.rotor_at(v3({1})).index, 2u);
}

TEST(ProppStep, OrderMustCoverOccupiedVertices) {
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 1);
  c.set_chips(v3({0, 1}), 1);
  std::vector<Vertex> partial{Vertex::origin()};
  EXPECT_THROW(propp_step_ordered(c, partial), Error);
  std::vector<Vertex> twice{Vertex::origin(), Vertex::origin(), v3({0, 1})};
  EXPECT_THROW(propp_step_ordered(c, twice), Error);
}

TEST(ProppStep, BudgetIsEnforced) {
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 1000);
  try {
    propp_run(c, 6, RunOptions{20, false, {}});
    FAIL() << "budget not enforced";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(ProppRun, ConservesChipsAndRecordsHistory) {
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 7);
  c.set_chips(v3({2, 1}), 11);
  auto traj = propp_run(c, 6);
  EXPECT_EQ(traj.horizon(), 6u);
  EXPECT_EQ(traj.total_chips(), 18);
  for (std::size_t t = 0; t <= 6; ++t) {
    BigInt sum = 0;
    for (const auto& [v, n] : traj.chip_map(t)) sum += n;
    EXPECT_EQ(sum, 18);
  }
  EXPECT_EQ(traj.chips_at(Vertex::origin(), 0), 7);
  EXPECT_EQ(traj.final_state().total_chips(), 18);
}

TEST(ProppRun, WatchListWithoutHistory) {
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 9);
  auto full = propp_run(c, 5);
  auto lean = propp_run(c, 5, RunOptions{kDefaultOccupancyBudget, false, {Vertex::origin()}});
  EXPECT_FALSE(lean.has_history());
  for (std::size_t t = 0; t <= 5; ++t) EXPECT_EQ(lean.chips_at(Vertex::origin(), t), full.chips_at(Vertex::origin(), t));
  EXPECT_EQ(lean.final_state(), full.final_state());
}

TEST(ProppRun, ObserverSeesEveryTime) {
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 2);
  std::vector<std::size_t> seen;
  propp_run(c, 4, {}, [&](std::size_t t, const ProppConfig&) { seen.push_back(t); });
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(OddMoves, RecordResidueAndPhase) {
  ProppConfig c(k3);
  c.set_chips(v3({0}), 4);
  c.set_chips(v3({1}), 6);
  c.set_rotor(v3({0}), Direction{2});
  OddMoveSchedule schedule;
  record_odd_moves(c, 3, schedule);
  ASSERT_EQ(schedule.size(), 1u);
  EXPECT_EQ(schedule.at(v3({0})), (std::vector<OddMove>{{3, 1, Direction{2}}}));
}

TEST(LinearMachine, SplitsEvenly) {
  ChipMap chips{{Vertex::origin(), BigInt(1)}};
  LinearState s = linear_step(LinearState(k3, chips));
  EXPECT_EQ(s.time(), 1u);
  for (unsigned d = 0; d < 3; ++d) EXPECT_EQ(s.mass_at(v3({d})), ExactAmount(3, 1, 1));
  EXPECT_TRUE(s.mass_at(Vertex::origin()).is_zero());
  LinearState later = linear_run(s, 5);
  EXPECT_EQ(later.total(), ExactAmount(3, 1));
}

TEST(LinearMachine, AnalyticMatchesSimulation) {
  ChipMap chips{{Vertex::origin(), BigInt(5)}, {v3({0, 1}), BigInt(7)}, {v3({2, 0, 1, 2}), BigInt(3)}};
  KernelTable table(k3);
  LinearState s(k3, chips);
  for (std::size_t t = 0; t <= 8; ++t) {
    for (const Vertex& target : {Vertex::origin(), v3({0}), v3({0, 1})}) {
      EXPECT_EQ(s.mass_at(target), linear_analytic(chips, t, target, table)) << "t=" << t;
    }
    s = linear_step(s);
  }
}

TEST(Discrepancy, SpecExamples) {
  KernelTable table(k3);
  ProppConfig one(k3);
  one.set_chips(Vertex::origin(), 1);
  EXPECT_TRUE(discrepancy(propp_run(one, 0), 0, Vertex::origin(), table).is_zero());

  ProppConfig three(k3);
  three.set_chips(Vertex::origin(), 3);
  EXPECT_TRUE(discrepancy(propp_run(three, 1), 1, Vertex::origin(), table).is_zero());

  for (unsigned d = 0; d < 3; ++d) {
    ProppConfig c = one;
    c.set_rotor(Vertex::origin(), Direction{d});
    ExactAmount disc = discrepancy(propp_run(c, 2), 2, Vertex::origin(), table);
    EXPECT_TRUE(disc == ExactAmount(3, -1, 1) || disc == ExactAmount(3, 2, 1)) << disc.to_string();
  }
}

TEST(OrderIndependence, ShuffledStepsAgree) {
  std::mt19937_64 rng(7);
  ProppConfig c(TreeParams(4));
  TreeParams p(4);
  for (const Vertex& v : ball_vertices(3, p)) c.set_chips(v, static_cast<long>(rng() % 9));
  ProppConfig expected = propp_step(c);
  std::vector<Vertex> order;
  for (const auto& entry : c.chips()) order.push_back(entry.first);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_EQ(propp_step_ordered(c, order), expected);
  }
}
