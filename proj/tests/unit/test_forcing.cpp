#include <gtest/gtest.h>

#include "rotortree/analysis.hpp"
#include "rotortree/errors.hpp"
#include "rotortree/forcing.hpp"

using namespace rotortree;

namespace {

const TreeParams k3(3);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no rotortree::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(PileSpread, DividesByPowersOfK) {
  KernelTable t(k3);
  EXPECT_EQ(pile_spread(9, 2, 0, t), 3);
  EXPECT_EQ(pile_spread(27, 3, 1, t), 5);
  EXPECT_EQ(pile_spread(27, 3, 2, t), 0);
  EXPECT_EQ(code_of([&] { pile_spread(4, 1, 1, t); }), ErrorCode::NotEvenlyDivisible);
}

TEST(ResidueTarget, Coverage) {
  ResidueTarget plain(k3, 4, 2);
  EXPECT_EQ(plain.radius_at(0), 2u);
  EXPECT_EQ(plain.radius_at(4), 2u);
  EXPECT_FALSE(plain.radius_at(5));
  ResidueTarget cone(k3, 5, 5, 6);
  EXPECT_EQ(cone.radius_at(0), 5u);
  EXPECT_EQ(cone.radius_at(4), 2u);
  EXPECT_EQ(cone.radius_at(5), 1u);
  EXPECT_TRUE(cone.covers(make_vertex({0, 1}, k3), 4));
  EXPECT_FALSE(cone.covers(make_vertex({0, 1, 0}, k3), 4));
}

TEST(ResidueTarget, ValidatesCells) {
  ResidueTarget t(k3, 3, 2);
  EXPECT_EQ(code_of([&] { t.set(make_vertex({0}, k3), 0, 1); }), ErrorCode::ParityViolation);
  EXPECT_EQ(code_of([&] { t.set(make_vertex({0, 1, 0}, k3), 1, 1); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { t.set(Vertex::origin(), 4, 1); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { t.set(Vertex::origin(), 0, 3); }), ErrorCode::InvalidArgument);
  t.set(make_vertex({0}, k3), 1, 2);
  EXPECT_EQ(t.residue(make_vertex({0}, k3), 1), 2u);
  t.set(make_vertex({0}, k3), 1, 0);
  EXPECT_TRUE(t.entries().empty());
  // A zero residue is allowed anywhere.
  t.set(make_vertex({0}, k3), 0, 0);
}

TEST(Synthesize, ZeroTargetGivesEmptyConfig) {
  ResidueTarget t(k3, 3, 2);
  auto result = synthesize(t, ProppConfig(k3));
  EXPECT_EQ(result.config.occupied(), 0u);
  EXPECT_TRUE(result.placements.empty());
  EXPECT_TRUE(result.config.even());
  EXPECT_TRUE(verify_residues(result.config, t).passed());
}

TEST(Synthesize, RealizesASmallTarget) {
  ResidueTarget t(k3, 4, 3);
  t.set(Vertex::origin(), 0, 2);
  t.set(make_vertex({0}, k3), 1, 1);
  t.set(make_vertex({1, 2}, k3), 2, 2);
  t.set(make_vertex({0, 1, 0}, k3), 3, 1);
  t.set(Vertex::origin(), 4, 1);
  for (DefaultRotor rule : {DefaultRotor::Canonical, DefaultRotor::TowardOrigin}) {
    ProppConfig rotors(k3, rule);
    rotors.set_rotor(make_vertex({2}, k3), Direction{1});
    rotors.policy().set_sequence(make_vertex({0}, k3), {2, 0, 1});

    ForcingOptions slow;
    slow.check_stages = true;
    auto a = synthesize(t, rotors, slow);
    EXPECT_EQ(a.stats.stage_check_failures, 0u);
    ResidueReport report = verify_residues(a.config, t);
    EXPECT_TRUE(report.passed()) << report.failures << " of " << report.cells;
    EXPECT_GT(report.cells, 0u);
    for (const Placement& p : a.placements) {
      EXPECT_GE(p.epsilon, 1u);
      EXPECT_LT(p.epsilon, 3u);
    }

    ForcingOptions fast;
    fast.mode = ForcingMode::AnalyticIncrement;
    auto b = synthesize(t, rotors, fast);
    EXPECT_EQ(a.config, b.config);
    EXPECT_EQ(b.config.rotor_at(make_vertex({2}, k3)).index, 1u);
  }
}

TEST(Synthesize, RejectsMismatchedDegree) {
  ResidueTarget t(k3, 2, 1);
  EXPECT_THROW(synthesize(t, ProppConfig(TreeParams(4))), Error);
}

TEST(VerifyResidues, ReportsMismatches) {
  ResidueTarget t(k3, 2, 1);
  t.set(Vertex::origin(), 0, 1);
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 3);
  ResidueReport report = verify_residues(c, t);
  EXPECT_FALSE(report.passed());
  ASSERT_FALSE(report.examples.empty());
  EXPECT_EQ(report.examples.front().expected, 1u);
  EXPECT_EQ(report.examples.front().actual, 0u);
  EXPECT_TRUE(verify_residues(c, t, kDefaultOccupancyBudget, 0).failures == 1);
}

TEST(DivergenceTarget, KEqualsThreeTSix) {
  auto [target, rotors] = divergence_target(make_divergence_spec(3, 6));
  EXPECT_EQ(rotors.default_rotor(), DefaultRotor::TowardOrigin);
  std::size_t ones = 0;
  for (const auto& [cell, r] : target.entries()) {
    EXPECT_EQ(r, 1u);
    const auto& [v, t] = cell;
    EXPECT_TRUE((v.depth() == 1 && t == 3) || (v.depth() == 2 && t == 0)) << v.to_string() << "@" << t;
    ++ones;
  }
  EXPECT_EQ(ones, 3u + 6u);
}

TEST(DivergenceTarget, EmptyForShortHorizon) {
  auto [target, rotors] = divergence_target(make_divergence_spec(3, 2));
  EXPECT_TRUE(target.entries().empty());
  auto result = synthesize(target, rotors);
  EXPECT_EQ(result.config.occupied(), 0u);
}
