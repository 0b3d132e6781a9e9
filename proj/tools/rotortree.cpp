// rotortree: command-line front end for the rotor-router library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotortree/analysis.hpp"
#include "rotortree/decimal.hpp"
#include "rotortree/errors.hpp"
#include "rotortree/forcing.hpp"
#include "rotortree/io.hpp"
#include "rotortree/kernels.hpp"
#include "rotortree/machines.hpp"
#include "rotortree/manifest.hpp"
#include "rotortree/verify.hpp"

namespace fs = std::filesystem;
using namespace rotortree;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::size_t occupancy_budget() {
  const char* env = std::getenv("ROTOR_TREE_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultOccupancyBudget;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::InvalidArgument, std::string("ROTOR_TREE_BUDGET must be a positive integer, got '") + env + "'");
}

/// "p/k^q = a/b ≈ d", dropping the parts that add nothing.
std::string describe(const ExactAmount& v) {
  std::string out = v.to_string();
  out += " = " + v.to_fraction_string();
  if (!v.is_integer()) out += " ≈ " + format_decimal(to_decimal(v));
  return out;
}

/// Same, but keeps the raw numerator over k^kpow instead of reducing it.
std::string describe_raw(const BigInt& numerator, unsigned k, std::size_t kpow) {
  ExactAmount v(k, numerator, kpow);
  std::string out = numerator.get_str() + "/" + std::to_string(k) + "^" + std::to_string(kpow);
  out += " = " + v.to_fraction_string();
  if (!v.is_integer()) out += " ≈ " + format_decimal(to_decimal(v));
  return out;
}

void ensure_parent(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

std::ofstream open_out(const fs::path& file) {
  ensure_parent(file);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + file.string());
  return out;
}

void write_manifest(const fs::path& dir, const RunManifest& manifest) {
  std::ofstream out = open_out(dir / "manifest.json");
  Json doc = manifest.to_json();
  doc["hash"] = manifest.hash();
  out << doc.dump(2) << '\n';
}

/// Parses "1/4", "0.25" or "1" into a fraction.
std::pair<unsigned long, unsigned long> parse_fraction(const std::string& text) {
  auto fail = [&]() -> std::pair<unsigned long, unsigned long> {
    throw Error(ErrorCode::InvalidArgument, "expected a fraction like 1/4 or 0.25, got '" + text + "'");
  };
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      std::size_t a = 0;
      std::size_t b = 0;
      unsigned long num = std::stoul(text.substr(0, slash), &a);
      unsigned long den = std::stoul(text.substr(slash + 1), &b);
      if (a != slash || b != text.size() - slash - 1 || den == 0) return fail();
      return {num, den};
    }
    auto dot = text.find('.');
    std::string digits = text;
    unsigned long den = 1;
    if (dot != std::string::npos) {
      digits = text.substr(0, dot) + text.substr(dot + 1);
      for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || den > 1'000'000'000) {
      return fail();
    }
    return {std::stoul(digits), den};
  } catch (const std::logic_error&) {
    return fail();
  }
}

// ------------------------------------------------------------------ kernels

struct KernelArgs {
  unsigned k = 3;
  std::string what;
  std::size_t x = 0;
  std::optional<std::size_t> t;
  std::string a = "in";
};

int cmd_kernels(const KernelArgs& args) {
  TreeParams params(args.k);
  KernelTable table(params);
  if (args.what == "tmax") {
    if (args.x == 0) throw Error(ErrorCode::InvalidArgument, "tmax needs x >= 1");
    std::cout << t_max(args.x, params) << '\n';
    return kOk;
  }
  if (!args.t) throw Error(ErrorCode::InvalidArgument, "--t is required for '" + args.what + "'");
  const std::size_t t = *args.t;
  if (args.what == "n") {
    std::cout << describe_raw(path_count(args.x, t, table), args.k, 0) << '\n';
  } else if (args.what == "H") {
    std::cout << describe_raw(path_count(args.x, t, table), args.k, t) << '\n';
  } else if (args.what == "i") {
    if (args.x == 0) throw Error(ErrorCode::InvalidArgument, "i needs x >= 1");
    std::cout << describe_raw(i_kernel(args.x, t, table), args.k, 0) << '\n';
  } else if (args.what == "inf") {
    if (args.x == 0 || t == 0) throw Error(ErrorCode::InvalidArgument, "inf needs x >= 1 and t >= 1");
    BigInt i = i_kernel(args.x, t, table);
    if (args.a == "out") {
      mpz_divexact_ui(i.get_mpz_t(), i.get_mpz_t(), args.k - 1);
      i = -i;
    }
    std::cout << describe_raw(i, args.k, t) << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------------ simulate

struct SimulateArgs {
  std::string config;
  std::size_t T = 0;
  std::string watch;
  std::string out;
};

int cmd_simulate(const SimulateArgs& args, std::size_t budget) {
  ProppConfig config = config_from_json(load_json_file(args.config));
  const Vertex watch = parse_vertex(args.watch, config.params());

  RunManifest manifest{"simulate", {args.config}, {{"T", std::to_string(args.T)}, {"watch", args.watch}}, args.out};
  const CsvHeader header{manifest.hash()};

  RunOptions run;
  run.budget = budget;
  run.keep_history = !args.out.empty();
  run.watch = {watch};
  auto traj = propp_run(config, args.T, run);
  KernelTable table(config.params());
  ExactAmount d = discrepancy(traj, args.T, watch, table);

  if (!args.out.empty()) {
    const fs::path dir(args.out);
    fs::create_directories(dir);
    write_manifest(dir, manifest);
    {
      auto out = open_out(dir / "trajectory.csv");
      write_trajectory_csv(out, traj, header);
    }
    if (watch.is_origin() && config.even()) {
      std::vector<ContributionTerm> terms;
      std::vector<Vertex> vertices;
      for (const auto& entry : traj.schedule()) vertices.push_back(entry.first);
      std::sort(vertices.begin(), vertices.end());
      std::vector<OddMove> before;
      for (const Vertex& v : vertices) {
        before.clear();
        for (const OddMove& b : traj.schedule().at(v)) {
          if (b.time < args.T) before.push_back(b);
        }
        auto more = contribution_terms(v, before, config.policy(), args.T, table);
        terms.insert(terms.end(), more.begin(), more.end());
      }
      auto out = open_out(dir / "decomposition.csv");
      write_decomposition_csv(out, terms, header);
      auto spheres = open_out(dir / "spheres.csv");
      auto dec = decompose(traj, args.T, table);
      std::size_t max_x = dec.per_sphere.empty() ? 0 : dec.per_sphere.rbegin()->first;
      write_sphere_csv(spheres, sphere_report(dec, max_x, config.total_chips(), config.params()), header);
    }
  }
  std::cout << "discrepancy at '" << watch.to_string() << "' after T=" << args.T << ": " << describe(d) << '\n';
  return kOk;
}

// ------------------------------------------------------------------ force

struct ForceArgs {
  std::string target;
  std::string out;
  std::string placements;
  std::string mode = "resimulate";
  bool check_stages = false;
};

void print_report(const ResidueReport& report) {
  const double share = report.cells == 0 ? 100.0 : 100.0 * (report.cells - report.failures) / report.cells;
  std::cout << "verified " << (report.cells - report.failures) << "/" << report.cells << " cells";
  if (report.passed()) {
    std::cout << ", verified 100%\n";
  } else {
    std::cout << std::fixed << std::setprecision(2) << " (" << share << "%)\n";
    for (const ResidueMismatch& m : report.examples) {
      std::cout << "  mismatch at '" << m.vertex.to_string() << "'@" << m.time << ": expected " << m.expected
                << ", got " << m.actual << '\n';
    }
  }
}

int cmd_force(const ForceArgs& args, std::size_t budget) {
  ResidueTarget target = target_from_json(load_json_file(args.target));
  ProppConfig rotors(target.params());
  ForcingOptions options;
  options.budget = budget;
  options.mode = args.mode == "incremental" ? ForcingMode::AnalyticIncrement : ForcingMode::Resimulate;
  options.check_stages = args.check_stages;
  ForcingResult result = synthesize(target, rotors, options);

  RunManifest manifest{"force", {args.target}, {{"mode", args.mode}}, args.out};
  Json doc = config_to_json(result.config);
  doc["manifest"] = manifest.hash();
  {
    auto out = open_out(args.out);
    out << doc.dump(2) << '\n';
  }
  if (!args.placements.empty()) {
    auto out = open_out(args.placements);
    write_placements_csv(out, result.placements, CsvHeader{manifest.hash()});
  }
  std::cout << "placements " << result.placements.size() << ", chips " << result.stats.total_chips.get_str()
            << ", occupied " << result.config.occupied() << '\n';
  if (args.check_stages) std::cout << "stage check failures " << result.stats.stage_check_failures << '\n';
  ResidueReport report = verify_residues(result.config, target, budget);
  print_report(report);
  return report.passed() && result.stats.stage_check_failures == 0 ? kOk : kVerifyFailed;
}

// ------------------------------------------------------------------ diverge

struct DivergeArgs {
  unsigned k = 3;
  std::vector<std::size_t> T;
  std::string mode = "analytic";
  std::string out;
  std::string emit_config;
};

int cmd_diverge(const DivergeArgs& args, std::size_t budget) {
  TreeParams params(args.k);
  std::size_t max_T = 0;
  for (std::size_t T : args.T) {
    if (T % 2) throw Error(ErrorCode::OddHorizon, "divergence horizon must be even, got " + std::to_string(T));
    max_T = std::max(max_T, T);
  }
  if (!args.emit_config.empty() && args.T.size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "--emit-config needs exactly one T");
  }
  DivergenceSeries series(args.k, max_T);

  std::map<std::string, std::string> parameters{{"k", std::to_string(args.k)}, {"mode", args.mode}};
  std::string ts;
  for (std::size_t T : args.T) ts += (ts.empty() ? "" : ",") + std::to_string(T);
  parameters["T"] = ts;
  RunManifest manifest{"diverge", {}, parameters, args.out};

  ForcingOptions forcing;
  forcing.mode = ForcingMode::AnalyticIncrement;
  forcing.budget = budget;

  bool mismatch = false;
  std::vector<GrowthRow> rows;
  for (std::size_t T : args.T) {
    GrowthRow row = series.row(T);
    if (args.mode != "analytic" || !args.emit_config.empty()) {
      auto spec = make_divergence_spec(args.k, T);
      if (args.mode != "analytic") {
        auto sim = simulate_divergence(spec, forcing);
        row.simulated = sim.simulated;
        if (sim.simulated != row.discrepancy) mismatch = true;
        if (!args.emit_config.empty()) {
          Json doc = config_to_json(sim.forcing.config);
          doc["manifest"] = manifest.hash();
          auto out = open_out(args.emit_config);
          out << doc.dump(2) << '\n';
        }
      } else {
        auto [target, rotors] = divergence_target(spec);
        ForcingResult forced = synthesize(target, rotors, forcing);
        Json doc = config_to_json(forced.config);
        doc["manifest"] = manifest.hash();
        auto out = open_out(args.emit_config);
        out << doc.dump(2) << '\n';
      }
    }
    std::cout << "T=" << T << " D=" << describe(row.discrepancy);
    if (row.simulated) std::cout << (*row.simulated == row.discrepancy ? " (simulated: match)" : " (simulated: MISMATCH ")
                                 << (*row.simulated == row.discrepancy ? "" : row.simulated->to_string() + ")");
    std::cout << '\n';
    rows.push_back(std::move(row));
  }
  if (args.mode == "simulate") {
    // The simulated value is the measurement; the closed sum is kept for reference.
    for (GrowthRow& row : rows) {
      row.discrepancy = *row.simulated;
      row.discrepancy_decimal = to_decimal(row.discrepancy);
      row.ratio = row.T == 0 ? Decimal(0) : row.discrepancy_decimal / row.sqrt_kT;
    }
  }
  if (!args.out.empty()) {
    auto out = open_out(args.out);
    write_growth_csv(out, rows, CsvHeader{manifest.hash()});
  }
  return mismatch ? kVerifyFailed : kOk;
}

// ------------------------------------------------------------------ chips / converge

int cmd_chips(unsigned k, const std::vector<std::size_t>& radii, const std::string& out_path) {
  auto rows = chip_count_experiment(k, radii);
  for (const ChipCountRow& r : rows) {
    std::cout << "R=" << r.R << " kappa=" << r.kappa.get_str() << " D≈" << format_decimal(to_decimal(r.discrepancy));
    if (r.ratio) std::cout << " D/sqrt(ln kappa)≈" << format_decimal(*r.ratio);
    std::cout << '\n';
  }
  if (!out_path.empty()) {
    std::string rs;
    for (std::size_t R : radii) rs += (rs.empty() ? "" : ",") + std::to_string(R);
    RunManifest manifest{"chips", {}, {{"k", std::to_string(k)}, {"R", rs}}, out_path};
    auto out = open_out(out_path);
    write_chip_count_csv(out, rows, CsvHeader{manifest.hash()});
  }
  return kOk;
}

int cmd_converge(unsigned k, const std::string& eps, std::size_t x_max, const std::string& out_path) {
  auto [num, den] = parse_fraction(eps);
  ConvergenceSeries s = convergence_series(k, num, den, x_max);
  if (!s.lower_partial.empty()) {
    std::cout << "lower branch S(" << x_max << ")≈" << format_decimal(to_decimal(s.lower_partial.back())) << '\n';
    std::cout << "upper branch S(" << x_max << ")≈" << format_decimal(to_decimal(s.upper_partial.back())) << '\n';
  }
  if (!out_path.empty()) {
    RunManifest manifest{"converge", {}, {{"k", std::to_string(k)}, {"eps", eps}, {"x_max", std::to_string(x_max)}},
                         out_path};
    auto out = open_out(out_path);
    out << "# manifest " << manifest.hash() << '\n';
    out << "x,t_lower,lower_partial_exact,lower_partial_decimal,t_upper,upper_partial_exact,upper_partial_decimal\n";
    for (std::size_t i = 0; i < s.lower_partial.size(); ++i) {
      out << i + 1 << ',' << s.lower_times[i] << ',' << s.lower_partial[i].to_string() << ','
          << format_decimal(to_decimal(s.lower_partial[i])) << ',' << s.upper_times[i] << ','
          << s.upper_partial[i].to_string() << ',' << format_decimal(to_decimal(s.upper_partial[i])) << '\n';
    }
  }
  return kOk;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const std::string& suite_text, std::uint64_t seed, std::size_t budget) {
  const Suite suite = parse_suite(suite_text);
  VerifyOptions options;
  options.seed = seed;
  options.budget = budget;
  std::size_t failed = 0;
  std::cout << "suite " << suite_name(suite) << ", seed " << seed << '\n';
  for (const CheckEntry& entry : all_checks()) {
    if (suite != Suite::All && entry.suite != suite) continue;
    CheckResult r = run_check(entry.id, options);
    if (!r.passed) ++failed;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.name << " (" << r.checks << " checks, "
              << r.failures << " failed, " << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
    std::cout.unsetf(std::ios::floatfield);
    std::cout << "       " << r.detail << '\n';
  }
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
  return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rotor-router and linear machine experiments on the k-regular tree"};
  app.require_subcommand(1);

  KernelArgs kernel;
  auto* kernels = app.add_subcommand("kernels", "Print a kernel value exactly");
  kernels->add_option("--k", kernel.k, "Tree degree")->default_val(3);
  kernels->add_option("--what", kernel.what, "n, H, i, inf or tmax")
      ->required()
      ->check(CLI::IsMember({"n", "H", "i", "inf", "tmax"}));
  kernels->add_option("--x", kernel.x, "Distance")->required();
  kernels->add_option("--t", kernel.t, "Time");
  kernels->add_option("--a", kernel.a, "Move for inf: in (towards the origin) or out")
      ->check(CLI::IsMember({"in", "out", "-1", "+1"}))
      ->transform([](std::string s) { return s == "-1" ? std::string("in") : s == "+1" ? std::string("out") : s; });

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run the Propp machine and report the discrepancy");
  simulate->add_option("--config", sim.config, "Configuration JSON")->required();
  simulate->add_option("--T", sim.T, "Number of rounds")->required();
  simulate->add_option("--watch", sim.watch, "Vertex to measure (default: origin)");
  simulate->add_option("--out", sim.out, "Directory for trajectory, decomposition and sphere CSVs");

  ForceArgs force;
  auto* forcecmd = app.add_subcommand("force", "Synthesize a configuration with prescribed residues");
  forcecmd->add_option("--target", force.target, "Residue target JSON")->required();
  forcecmd->add_option("--out", force.out, "Output configuration JSON")->required();
  forcecmd->add_option("--placements", force.placements, "Placements CSV");
  forcecmd->add_option("--mode", force.mode, "resimulate or incremental")
      ->check(CLI::IsMember({"resimulate", "incremental"}));
  forcecmd->add_flag("--check-stages", force.check_stages, "Re-check earlier cells after every stage");

  DivergeArgs div;
  auto* diverge = app.add_subcommand("diverge", "Discrepancy of the divergence construction");
  diverge->add_option("--k", div.k, "Tree degree")->default_val(3);
  diverge->add_option("--T", div.T, "Even horizon(s)")->required()->delimiter(',');
  diverge->add_option("--mode", div.mode, "analytic, simulate or both")
      ->check(CLI::IsMember({"analytic", "simulate", "both"}));
  diverge->add_option("--out", div.out, "Growth table CSV");
  diverge->add_option("--emit-config", div.emit_config, "Write the synthesized configuration JSON");

  unsigned chips_k = 3;
  std::vector<std::size_t> radii;
  std::string chips_out;
  auto* chips = app.add_subcommand("chips", "Discrepancy against the number of chip-carrying vertices");
  chips->add_option("--k", chips_k, "Tree degree")->default_val(3);
  chips->add_option("--R", radii, "Radii")->required()->delimiter(',');
  chips->add_option("--out", chips_out, "Chip-count CSV");

  unsigned conv_k = 3;
  std::string eps = "1/2";
  std::size_t x_max = 100;
  std::string conv_out;
  auto* converge = app.add_subcommand("converge", "Partial sums of the bounding series");
  converge->add_option("--k", conv_k, "Tree degree")->default_val(3);
  converge->add_option("--eps", eps, "Window half-width, e.g. 1/4 or 0.25");
  converge->add_option("--x-max", x_max, "Number of terms");
  converge->add_option("--out", conv_out, "Partial sums CSV");

  std::string suite = "all";
  std::uint64_t seed = VerifyOptions{}.seed;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "kernels, machines, forcing, decomposition, bounds or all");
  verify->add_option("--seed", seed, "Seed for randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const std::size_t budget = occupancy_budget();
    if (kernels->parsed()) return cmd_kernels(kernel);
    if (simulate->parsed()) return cmd_simulate(sim, budget);
    if (forcecmd->parsed()) return cmd_force(force, budget);
    if (diverge->parsed()) return cmd_diverge(div, budget);
    if (chips->parsed()) return cmd_chips(chips_k, radii, chips_out);
    if (converge->parsed()) return cmd_converge(conv_k, eps, x_max, conv_out);
    if (verify->parsed()) return cmd_verify(suite, seed, budget);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::BudgetExceeded ? kBudget : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
