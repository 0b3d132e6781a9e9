#include "rotortree/analysis.hpp"

#include <algorithm>
#include <string>

#include "rotortree/errors.hpp"

namespace rotortree {

ExactAmount discrepancy(const ProppTrajectory& traj, std::size_t T, const Vertex& target, KernelTable& table) {
  ExactAmount propp(table.k(), traj.chips_at(target, T));
  return propp - linear_analytic(traj.initial().chips(), T, target, table);
}

namespace {

ExactAmount move_influence(std::size_t depth, Move move, std::size_t t, KernelTable& table) {
  const unsigned k = table.k();
  BigInt i = table.i(depth, t);
  if (move == Move::Outward) {
    mpz_divexact_ui(i.get_mpz_t(), i.get_mpz_t(), k - 1);
    i = -i;
  }
  return ExactAmount(k, std::move(i), t);
}

void check_bursts(std::span<const OddMove> bursts, std::size_t T) {
  for (const OddMove& b : bursts) {
    if (b.time >= T) {
      throw Error(ErrorCode::SchedulePastHorizon,
                  "burst at time " + std::to_string(b.time) + " is not before T=" + std::to_string(T));
    }
  }
}

}  // namespace

std::vector<ContributionTerm> contribution_terms(const Vertex& x, std::span<const OddMove> bursts,
                                                 const RotorPolicy& policy, std::size_t T, KernelTable& table) {
  check_bursts(bursts, T);
  std::vector<ContributionTerm> out;
  for (const OddMove& b : bursts) {
    for (unsigned j = 0; j < b.residue; ++j) {
      Direction d = policy.advance(x, b.phase, j);
      Move move = (!x.is_origin() && d == toward_origin(x)) ? Move::Inward : Move::Outward;
      ExactAmount value = x.is_origin() ? ExactAmount::zero(table.k())
                                        : move_influence(x.depth(), move, T - b.time, table);
      out.push_back(ContributionTerm{x, b.time, move, std::move(value)});
    }
  }
  return out;
}

ExactAmount contribution(const Vertex& x, std::span<const OddMove> bursts, const RotorPolicy& policy,
                         std::size_t T, KernelTable& table) {
  check_bursts(bursts, T);
  const unsigned k = table.k();
  ExactAmount sum = ExactAmount::zero(k);
  // Moves from the origin are all outward and have zero influence.
  if (x.is_origin()) return sum;
  const Direction inward = toward_origin(x);
  for (const OddMove& b : bursts) {
    long inward_moves = 0;
    long outward_moves = 0;
    for (unsigned j = 0; j < b.residue; ++j) {
      (policy.advance(x, b.phase, j) == inward ? inward_moves : outward_moves) += 1;
    }
    // inward * i - outward * i/(k-1), all over k^t.
    const std::size_t t = T - b.time;
    BigInt i = table.i(x.depth(), t);
    if (sgn(i) == 0) continue;
    BigInt per_out = i;
    mpz_divexact_ui(per_out.get_mpz_t(), per_out.get_mpz_t(), k - 1);
    sum += ExactAmount(k, i * inward_moves - per_out * outward_moves, t);
  }
  return sum;
}

Decomposition decompose(const OddMoveSchedule& schedule, const RotorPolicy& policy, std::size_t T,
                        KernelTable& table) {
  const unsigned k = table.k();
  Decomposition out{{}, {}, ExactAmount::zero(k)};
  std::vector<OddMove> before;
  for (const auto& [x, bursts] : schedule) {
    before.clear();
    for (const OddMove& b : bursts) {
      if (b.time < T) before.push_back(b);
    }
    if (before.empty()) continue;
    ExactAmount con = contribution(x, before, policy, T, table);
    auto [slot, inserted] = out.per_sphere.try_emplace(x.depth(), k);
    slot->second += con;
    out.total += con;
    out.per_vertex.emplace(x, std::move(con));
  }
  return out;
}

Decomposition decompose(const ProppTrajectory& traj, std::size_t T, KernelTable& table) {
  if (T > traj.horizon()) throw Error(ErrorCode::InvalidArgument, "T beyond the trajectory horizon");
  return decompose(traj.schedule(), traj.initial().policy(), T, table);
}

std::size_t divergence_time(std::size_t x, unsigned k) {
  const std::size_t num = static_cast<std::size_t>(k) * x;
  const std::size_t den = k - 2;
  std::size_t t = (num + den - 1) / den;
  if ((t + x) % 2) ++t;
  return t;
}

DivergenceSpec make_divergence_spec(unsigned k, std::size_t T) {
  TreeParams params(k);
  if (T % 2) throw Error(ErrorCode::OddHorizon, "divergence horizon must be even, got " + std::to_string(T));
  DivergenceSpec spec{params, T, T * (k - 2) / k, {}};
  for (std::size_t x = 1; x <= spec.floor_radius; ++x) {
    std::size_t t = divergence_time(x, k);
    if (t <= T) spec.spheres.push_back({x, t});
  }
  return spec;
}

std::pair<ResidueTarget, ProppConfig> divergence_target(const DivergenceSpec& spec) {
  const std::size_t reach = spec.T == 0 ? 0 : spec.T - 1;
  ResidueTarget target(spec.params, reach, reach, spec.T);
  for (const auto& [x, t_x] : spec.spheres) {
    for (const Vertex& v : sphere_vertices(x, spec.params)) target.set(v, spec.T - t_x, 1);
  }
  return {std::move(target), ProppConfig(spec.params, DefaultRotor::TowardOrigin)};
}

ExactAmount divergence_term(std::size_t x, std::size_t t_x, const TreeParams& params) {
  const unsigned k = params.k();
  if (x == 0 || t_x == 0) return ExactAmount::zero(k);
  return ExactAmount(k, pow_ui(k - 1, x - 1) * i_kernel_closed(x, t_x, params), t_x - 1);
}

ExactAmount divergence_analytic(const DivergenceSpec& spec) {
  ExactAmount sum = ExactAmount::zero(spec.params.k());
  for (const auto& [x, t_x] : spec.spheres) sum += divergence_term(x, t_x, spec.params);
  return sum;
}

DivergenceSimulation simulate_divergence(const DivergenceSpec& spec, const ForcingOptions& options) {
  auto [target, rotors] = divergence_target(spec);
  ForcingResult forced = synthesize(target, rotors, options);

  RunOptions run;
  run.budget = options.budget;
  run.keep_history = false;
  run.watch = {Vertex::origin()};
  auto traj = propp_run(forced.config, spec.T, run);
  KernelTable table(spec.params);
  ExactAmount d = discrepancy(traj, spec.T, Vertex::origin(), table);
  return DivergenceSimulation{std::move(forced), std::move(d)};
}

namespace {

Decimal comparator_term(unsigned k, std::size_t x) {
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  Decimal kk(k);
  return pow(kk - 2, Decimal(3) / 2) / (6 * sqrt(kk * (kk - 1) * Decimal(x)));
}

}  // namespace

Decimal lower_bound_comparator(unsigned k, std::size_t T) {
  TreeParams params(k);
  Decimal sum = 0;
  for (std::size_t x = 1; x <= T * (k - 2) / k; ++x) sum += comparator_term(k, x);
  return sum;
}

DivergenceSeries::DivergenceSeries(unsigned k, std::size_t max_T) : params_(k), max_T_(max_T) {
  const std::size_t x_max = max_T * (k - 2) / k;
  times_.assign(x_max + 1, 0);
  terms_.assign(x_max + 1, ExactAmount::zero(k));
  prefix_.assign(x_max + 1, ExactAmount::zero(k));
  comparator_prefix_.assign(x_max + 1, Decimal(0));
  for (std::size_t x = 1; x <= x_max; ++x) {
    times_[x] = divergence_time(x, k);
    terms_[x] = divergence_term(x, times_[x], params_);
    prefix_[x] = prefix_[x - 1] + terms_[x];
    comparator_prefix_[x] = comparator_prefix_[x - 1] + comparator_term(k, x);
  }
}

ExactAmount DivergenceSeries::discrepancy(std::size_t T) const {
  if (T % 2) throw Error(ErrorCode::OddHorizon, "divergence horizon must be even, got " + std::to_string(T));
  if (T > max_T_) throw Error(ErrorCode::InvalidArgument, "horizon beyond the precomputed range");
  const std::size_t x_hi = T * (params_.k() - 2) / params_.k();
  ExactAmount d = prefix_[x_hi];
  // Spheres whose burst would fall before time 0 are not part of the sum;
  // t_x < lambda x + 2 confines them to the last couple of radii.
  for (std::size_t x = x_hi; x >= 1 && x + 3 > x_hi; --x) {
    if (times_[x] > T) d -= terms_[x];
  }
  return d;
}

Decimal DivergenceSeries::comparator(std::size_t T) const {
  if (T > max_T_) throw Error(ErrorCode::InvalidArgument, "horizon beyond the precomputed range");
  return comparator_prefix_[T * (params_.k() - 2) / params_.k()];
}

GrowthRow DivergenceSeries::row(std::size_t T) const {
  ExactAmount d = discrepancy(T);
  Decimal dd = to_decimal(d);
  Decimal root = boost::multiprecision::sqrt(Decimal(params_.k()) * Decimal(T));
  Decimal ratio = T == 0 ? Decimal(0) : dd / root;
  return GrowthRow{T, std::move(d), dd, root, ratio, comparator(T), std::nullopt};
}

ConvergenceSeries convergence_series(unsigned k, unsigned long eps_num, unsigned long eps_den, std::size_t x_max) {
  TreeParams params(k);
  if (eps_den == 0 || eps_num == 0 || eps_num >= eps_den) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie strictly between 0 and 1");
  }
  ConvergenceSeries out;
  ExactAmount lo = ExactAmount::zero(k);
  ExactAmount hi = ExactAmount::zero(k);
  const unsigned long den = eps_den * (k - 2);
  for (std::size_t x = 1; x <= x_max; ++x) {
    // (1 -/+ eps) lambda x as an exact fraction over eps_den (k-2).
    const unsigned long base = static_cast<unsigned long>(k) * x;
    std::size_t t_lo = (eps_den - eps_num) * base / den;
    std::size_t t_hi = ((eps_den + eps_num) * base + den - 1) / den;
    // Only t ~ x carries a non-zero kernel: step outwards to the nearest such t.
    if ((t_lo + x) % 2) t_lo = t_lo == 0 ? 0 : t_lo - 1;
    if ((t_hi + x) % 2) ++t_hi;
    lo += divergence_term(x, t_lo, params);
    hi += divergence_term(x, t_hi, params);
    out.lower_times.push_back(t_lo);
    out.upper_times.push_back(t_hi);
    out.lower_partial.push_back(lo);
    out.upper_partial.push_back(hi);
  }
  return out;
}

std::vector<SphereReport> sphere_report(const Decomposition& decomposition, std::size_t max_x,
                                        const BigInt& kappa, const TreeParams& params) {
  const unsigned k = params.k();
  std::vector<SphereReport> out;
  for (std::size_t x = 1; x <= max_x; ++x) {
    auto it = decomposition.per_sphere.find(x);
    ExactAmount con = it == decomposition.per_sphere.end() ? ExactAmount::zero(k) : it->second;
    std::size_t peak = t_max(x, params);
    ExactAmount bound(k, sphere_size(x, params) * i_kernel_closed(x, peak, params), peak);
    Decimal chips = to_decimal(kappa) * boost::multiprecision::sqrt(Decimal(x)) /
                    boost::multiprecision::pow(Decimal(k), static_cast<int>(x));
    out.push_back(SphereReport{x, std::move(con), std::move(bound), chips});
  }
  return out;
}

std::vector<ChipCountRow> chip_count_experiment(unsigned k, std::span<const std::size_t> radii) {
  TreeParams params(k);
  std::vector<ChipCountRow> out;
  for (std::size_t R : radii) {
    ExactAmount d = ExactAmount::zero(k);
    BigInt kappa = 0;
    for (std::size_t x = 1; x <= R; ++x) {
      d += divergence_term(x, divergence_time(x, k), params);
      kappa += sphere_size(x, params);
    }
    std::optional<Decimal> ratio;
    if (kappa > 1) ratio = to_decimal(d) / boost::multiprecision::sqrt(boost::multiprecision::log(to_decimal(kappa)));
    out.push_back(ChipCountRow{R, std::move(kappa), std::move(d), ratio});
  }
  return out;
}

}  // namespace rotortree
