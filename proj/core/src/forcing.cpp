#include "rotortree/forcing.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "rotortree/errors.hpp"

namespace rotortree {

ResidueTarget::ResidueTarget(TreeParams params, std::size_t horizon, std::size_t radius,
                             std::optional<std::size_t> cone)
    : params_(params), horizon_(horizon), radius_(radius), cone_(cone) {}

std::optional<std::size_t> ResidueTarget::radius_at(std::size_t t) const {
  if (t > horizon_) return std::nullopt;
  if (!cone_) return radius_;
  if (t > *cone_) return std::nullopt;
  return std::min(radius_, *cone_ - t);
}

bool ResidueTarget::covers(const Vertex& v, std::size_t t) const {
  auto r = radius_at(t);
  return r && v.depth() <= *r;
}

void ResidueTarget::set(const Vertex& v, std::size_t t, unsigned residue) {
  if (residue >= params_.k()) {
    throw Error(ErrorCode::InvalidArgument, "residue " + std::to_string(residue) + " is not below k");
  }
  if (!covers(v, t)) {
    throw Error(ErrorCode::InvalidArgument,
                "cell '" + v.to_string() + "@" + std::to_string(t) + "' lies outside the target");
  }
  if (residue != 0 && !same_parity(v.depth(), t)) {
    throw Error(ErrorCode::ParityViolation, "non-zero residue at '" + v.to_string() + "@" + std::to_string(t) +
                                                "' where depth and time differ in parity");
  }
  if (residue == 0) {
    residues_.erase({v, t});
  } else {
    residues_[{v, t}] = residue;
  }
}

unsigned ResidueTarget::residue(const Vertex& v, std::size_t t) const {
  auto it = residues_.find({v, t});
  return it == residues_.end() ? 0u : it->second;
}

BigInt pile_spread(const BigInt& m, std::size_t t, std::size_t d, KernelTable& table) {
  BigInt unit = pow_ui(table.k(), t);
  if (!mpz_divisible_p(m.get_mpz_t(), unit.get_mpz_t())) {
    throw Error(ErrorCode::NotEvenlyDivisible, m.get_str() + " chips do not split evenly " + std::to_string(t) +
                                                   " times");
  }
  BigInt per = m;
  mpz_divexact(per.get_mpz_t(), per.get_mpz_t(), unit.get_mpz_t());
  return per * table.n(d, t);
}

namespace {

unsigned residue_of(const BigInt& c, unsigned k) {
  return static_cast<unsigned>(mpz_fdiv_ui(c.get_mpz_t(), k));
}

unsigned correction(unsigned wanted, unsigned have, unsigned k) { return (wanted + k - have) % k; }

class Synthesizer {
 public:
  Synthesizer(const ResidueTarget& target, const ProppConfig& rotor_init, const ForcingOptions& options)
      : target_(target), options_(options), config_(rotor_init), table_(target.params()) {}

  ForcingResult run() {
    const unsigned k = target_.params().k();
    for (const auto& [v, c] : ChipMap(config_.chips())) config_.set_chips(v, 0);
    for (const auto& [cell, r] : target_.entries()) {
      if (cell.second == 0) config_.set_chips(cell.first, r);
    }
    config_.set_even(true);

    for (std::size_t stage = 0; stage < target_.horizon(); ++stage) {
      const std::size_t when = stage + 1;
      auto rad = target_.radius_at(when);
      if (!rad) continue;
      pile_ = pow_ui(k, when);
      if (options_.mode == ForcingMode::AnalyticIncrement) {
        run_stage_incremental(stage, *rad);
      } else {
        run_stage_resimulated(stage, *rad);
      }
      if (options_.check_stages) {
        auto report = verify_residues(config_, target_, options_.budget, when);
        ++result_stats_.simulations;
        result_stats_.stage_check_failures += report.failures;
      }
    }
    result_stats_.total_chips = config_.total_chips();
    return ForcingResult{config_, std::move(placements_), result_stats_};
  }

 private:
  void place(std::size_t stage, const Vertex& x, unsigned eps) {
    Vertex y = canonical_descendant(x, stage + 1);
    config_.add_chips(y, pile_ * eps);
    placements_.push_back(Placement{stage, std::move(y), eps});
  }

  void run_stage_resimulated(std::size_t stage, std::size_t rad) {
    const unsigned k = target_.params().k();
    const std::size_t when = stage + 1;
    for (std::size_t theta = 0; theta <= rad; ++theta) {
      // Off-parity spheres hold no chips at `when` and want residue 0.
      if (!same_parity(theta, when)) continue;
      RunOptions opts;
      opts.budget = options_.budget;
      opts.keep_history = false;
      opts.watch = sphere_vertices(theta, target_.params());
      auto traj = propp_run(config_, when, opts);
      ++result_stats_.simulations;
      for (const Vertex& x : opts.watch) {
        unsigned eps = correction(target_.residue(x, when), residue_of(traj.chips_at(x, when), k), k);
        if (eps) place(stage, x, eps);
      }
    }
  }

  void run_stage_incremental(std::size_t stage, std::size_t rad) {
    const unsigned k = target_.params().k();
    const std::size_t when = stage + 1;
    RunOptions opts;
    opts.budget = options_.budget;
    opts.keep_history = false;
    auto traj = propp_run(config_, when, opts);
    ++result_stats_.simulations;

    std::unordered_map<Vertex, BigInt, VertexHash> counts;
    for (const auto& [v, c] : traj.final_state().chips()) {
      if (v.depth() <= rad) counts.emplace(v, c);
    }
    for (std::size_t theta = 0; theta <= rad; ++theta) {
      if (!same_parity(theta, when)) continue;
      for (const Vertex& x : sphere_vertices(theta, target_.params())) {
        auto it = counts.find(x);
        unsigned have = it == counts.end() ? 0u : residue_of(it->second, k);
        unsigned eps = correction(target_.residue(x, when), have, k);
        if (!eps) continue;
        place(stage, x, eps);
        // A pile of eps*k^when chips at y reaches each z at distance d with
        // eps*n(d,when) chips; only deeper spheres are still pending.
        const Vertex& y = placements_.back().vertex;
        for (const Vertex& z : neighborhood(y, when, target_.params())) {
          if (z.depth() <= theta || z.depth() > rad) continue;
          BigInt add = table_.n(distance(y, z), when);
          if (sgn(add) != 0) counts[z] += add * eps;
        }
      }
    }
  }

  const ResidueTarget& target_;
  ForcingOptions options_;
  ProppConfig config_;
  KernelTable table_;
  BigInt pile_;
  std::vector<Placement> placements_;
  ForcingStats result_stats_;
};

}  // namespace

ForcingResult synthesize(const ResidueTarget& target, const ProppConfig& rotor_init, const ForcingOptions& options) {
  if (rotor_init.params() != target.params()) {
    throw Error(ErrorCode::InvalidArgument, "rotor configuration and target use different k");
  }
  return Synthesizer(target, rotor_init, options).run();
}

ResidueReport verify_residues(const ProppConfig& config, const ResidueTarget& target, std::size_t budget,
                              std::optional<std::size_t> max_time) {
  const unsigned k = target.params().k();
  const std::size_t last = max_time ? std::min(*max_time, target.horizon()) : target.horizon();
  ResidueReport report;
  std::vector<Vertex> ball;
  std::size_t ball_radius = 0;

  RunOptions opts;
  opts.budget = budget;
  opts.keep_history = false;
  propp_run(config, last, opts, [&](std::size_t t, const ProppConfig& state) {
    auto rad = target.radius_at(t);
    if (!rad) return;
    if (ball.empty() || ball_radius != *rad) {
      ball = ball_vertices(*rad, target.params());
      ball_radius = *rad;
    }
    for (const Vertex& v : ball) {
      ++report.cells;
      unsigned expected = target.residue(v, t);
      unsigned actual = residue_of(state.chips_at(v), k);
      if (expected != actual) {
        ++report.failures;
        if (report.examples.size() < 10) report.examples.push_back({v, t, expected, actual});
      }
    }
  });
  return report;
}

}  // namespace rotortree
