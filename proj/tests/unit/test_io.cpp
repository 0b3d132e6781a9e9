#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rotortree/errors.hpp"
#include "rotortree/io.hpp"
#include "rotortree/manifest.hpp"

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

TEST(ConfigJson, RoundTrip) {
  ProppConfig c(k3, DefaultRotor::TowardOrigin);
  c.set_chips(Vertex::origin(), parse_bigint("123456789012345678901234567890"));
  c.set_chips(make_vertex({0, 2}, k3), 4);
  c.set_rotor(make_vertex({1}, k3), Direction{2});
  c.policy().set_sequence(make_vertex({0}, k3), {1, 0, 2});
  c.set_even(true);

  Json doc = config_to_json(c);
  EXPECT_EQ(doc["chips"][""], "123456789012345678901234567890");
  EXPECT_EQ(doc["default_rotor"], "toward_origin");
  ProppConfig back = config_from_json(Json::parse(doc.dump()));
  EXPECT_EQ(back, c);
  EXPECT_TRUE(back.even());
  EXPECT_EQ(back.policy().advance(make_vertex({0}, k3), Direction{1}, 1).index, 0u);
  EXPECT_EQ(config_to_json(back).dump(), doc.dump());
}

TEST(ConfigJson, Minimal) {
  ProppConfig c = config_from_json(Json::parse(R"({"k": 4, "chips": {"0.1": "5"}})"));
  EXPECT_EQ(c.k(), 4u);
  EXPECT_EQ(c.chips_at(make_vertex({0, 1}, TreeParams(4))), 5);
  EXPECT_FALSE(c.even());
  EXPECT_EQ(c.default_rotor(), DefaultRotor::Canonical);
}

TEST(ConfigJson, Errors) {
  EXPECT_EQ(code_of([] { config_from_json(Json::parse(R"({"chips": {}})")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { config_from_json(Json::parse(R"([1, 2])")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { config_from_json(Json::parse(R"({"k": 3, "default_rotor": "up"})")); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { config_from_json(Json::parse(R"({"k": 3, "chips": {"0": true}})")); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { config_from_json(Json::parse(R"({"k": 3, "rotors": {"0": 3}})")); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { config_from_json(Json::parse(R"({"k": 3, "even": true, "chips": {"0": "1"}})")); }),
            ErrorCode::ParityViolation);
  EXPECT_EQ(code_of([] { config_from_json(Json::parse(R"({"k": 3, "chips": {"0.0": "1"}})")); }),
            ErrorCode::RepeatedLetter);
  EXPECT_EQ(code_of([] { config_from_json(Json::parse(R"({"k": 3, "chips": {"": "-2"}})")); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { config_from_json(Json::parse(R"({"k": 2})")); }), ErrorCode::DegenerateK);
}

TEST(TargetJson, RoundTrip) {
  ResidueTarget t(k3, 5, 5, 6);
  t.set(make_vertex({0}, k3), 3, 1);
  t.set(make_vertex({0, 1}, k3), 0, 2);
  Json doc = target_to_json(t);
  EXPECT_EQ(doc["residues"]["0@3"], 1);
  ResidueTarget back = target_from_json(doc);
  EXPECT_EQ(back.cone(), std::optional<std::size_t>(6));
  EXPECT_EQ(back.entries(), t.entries());
  EXPECT_EQ(target_to_json(back).dump(), doc.dump());
}

TEST(TargetJson, Errors) {
  EXPECT_EQ(code_of([] { target_from_json(Json::parse(R"({"k": 3, "radius": 2})")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              target_from_json(Json::parse(R"({"k": 3, "horizon": 2, "radius": 2, "residues": {"0": 1}})"));
            }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              target_from_json(Json::parse(R"({"k": 3, "horizon": 2, "radius": 2, "residues": {"0@x": 1}})"));
            }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              target_from_json(Json::parse(R"({"k": 3, "horizon": 2, "radius": 2, "residues": {"0@0": 1}})"));
            }),
            ErrorCode::ParityViolation);
}

TEST(JsonFile, MissingAndMalformed) {
  EXPECT_EQ(code_of([] { load_json_file("/nonexistent/config.json"); }), ErrorCode::ParseError);
  const auto path = std::filesystem::temp_directory_path() / "rotortree_broken.json";
  {
    std::ofstream out(path);
    out << "{\"k\": 3,";
  }
  EXPECT_EQ(code_of([&] { load_json_file(path); }), ErrorCode::ParseError);
  std::filesystem::remove(path);
}

TEST(Csv, TrajectoryIsSortedAndHeadered) {
  ProppConfig c(k3);
  c.set_chips(Vertex::origin(), 2);
  auto traj = propp_run(c, 1);
  std::ostringstream out;
  write_trajectory_csv(out, traj, CsvHeader{"abc"});
  EXPECT_EQ(out.str(), "# manifest abc\nt,vertex,chips,rotor\n0,,2,0\n1,0,1,1\n1,1,1,0\n");
}

TEST(Csv, PlacementsAndDecomposition) {
  std::vector<Placement> placements{{0, make_vertex({0, 1}, k3), 2}};
  std::ostringstream p;
  write_placements_csv(p, placements);
  EXPECT_EQ(p.str(), "stage,vertex,epsilon\n0,0.1,2\n");

  std::vector<ContributionTerm> terms{{make_vertex({1}, k3), 2, Move::Outward, ExactAmount(3, -2, 3)}};
  std::ostringstream d;
  write_decomposition_csv(d, terms);
  EXPECT_EQ(d.str(), "vertex,s,coefficient,value_exact,value_decimal\n1,2,-1/2,-2/3^3,-0.074074074074\n");
}

TEST(Csv, GrowthWithSimulatedColumn) {
  DivergenceSeries series(3, 6);
  std::vector<GrowthRow> rows{series.row(4), series.row(6)};
  std::ostringstream plain;
  write_growth_csv(plain, rows);
  EXPECT_EQ(plain.str().substr(0, plain.str().find('\n')), "T,discrepancy_exact,discrepancy_decimal,sqrt_kT,ratio,comparator");
  rows[1].simulated = ExactAmount(3, 188, 5);
  std::ostringstream sim;
  write_growth_csv(sim, rows);
  std::string text = sim.str();
  EXPECT_NE(text.find(",simulated_exact\n"), std::string::npos);
  EXPECT_NE(text.find("6,188/3^5,0.773662551440,4.242640687119,0.182354012158,0.116153904176,188/3^5\n"),
            std::string::npos);
}

TEST(Manifest, HashIsStableAndSensitive) {
  RunManifest a{"diverge", {}, {{"k", "3"}, {"T", "4,6"}}, "out"};
  RunManifest b = a;
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  b.parameters["T"] = "4,8";
  EXPECT_NE(a.hash(), b.hash());
  EXPECT_EQ(a.to_json()["format_version"], RunManifest::kFormatVersion);
}
