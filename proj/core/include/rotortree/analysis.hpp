#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rotortree/bigint.hpp"
#include "rotortree/decimal.hpp"
#include "rotortree/exact.hpp"
#include "rotortree/forcing.hpp"
#include "rotortree/kernels.hpp"
#include "rotortree/machines.hpp"
#include "rotortree/tree.hpp"

namespace rotortree {

/// f(target,T) - E(target,T) for the configuration the trajectory started from.
ExactAmount discrepancy(const ProppTrajectory& traj, std::size_t T, const Vertex& target, KernelTable& table);

/// One surplus rotor move and its influence on the origin at time T.
struct ContributionTerm {
  Vertex vertex;
  std::size_t time;
  Move move;
  ExactAmount value;
};

/// Every surplus move of vertex x before T with its influence
/// a * i(|x|, T-s) / k^(T-s), where a = 1 inward and -1/(k-1) outward.
/// Throws SchedulePastHorizon if a burst is at time >= T.
std::vector<ContributionTerm> contribution_terms(const Vertex& x, std::span<const OddMove> bursts,
                                                 const RotorPolicy& policy, std::size_t T, KernelTable& table);

/// CON(x): the summed influence of x's surplus moves.
ExactAmount contribution(const Vertex& x, std::span<const OddMove> bursts, const RotorPolicy& policy,
                         std::size_t T, KernelTable& table);

struct Decomposition {
  std::unordered_map<Vertex, ExactAmount, VertexHash> per_vertex;
  std::map<std::size_t, ExactAmount> per_sphere;
  ExactAmount total;
};

/// Contributions of every vertex to the origin's discrepancy at time T, using
/// only bursts strictly before T.
Decomposition decompose(const OddMoveSchedule& schedule, const RotorPolicy& policy, std::size_t T,
                        KernelTable& table);
Decomposition decompose(const ProppTrajectory& traj, std::size_t T, KernelTable& table);

/// Smallest t >= k x / (k-2) with t ~ x.
std::size_t divergence_time(std::size_t x, unsigned k);

struct DivergenceSphere {
  std::size_t x;
  std::size_t t_x;
};

/// The single-burst construction for horizon T: every vertex at distance x
/// holds one surplus chip, sent inwards, exactly t_x steps before T.
struct DivergenceSpec {
  TreeParams params;
  std::size_t T;
  /// floor(T (k-2) / k), the largest distance allowed by the distance-time ratio.
  std::size_t floor_radius;
  /// Spheres x = 1..floor_radius whose burst time T - t_x is non-negative.
  std::vector<DivergenceSphere> spheres;
};

/// Throws OddHorizon for odd T and DegenerateK for k < 3.
DivergenceSpec make_divergence_spec(unsigned k, std::size_t T);

/// Residue 1 at (x, T - t_x) for every listed sphere and 0 on every other
/// cell that can still influence the origin at time T (the light cone
/// |x| <= T - t). Rotors start pointing towards the origin.
std::pair<ResidueTarget, ProppConfig> divergence_target(const DivergenceSpec& spec);

/// Exact sum over spheres of (k-1)^(x-1) i(x,t_x) / k^(t_x-1).
ExactAmount divergence_analytic(const DivergenceSpec& spec);
ExactAmount divergence_term(std::size_t x, std::size_t t_x, const TreeParams& params);

struct DivergenceSimulation {
  ForcingResult forcing;
  ExactAmount simulated;
};

/// Synthesizes the divergence configuration and measures its discrepancy at
/// the origin by direct simulation.
DivergenceSimulation simulate_divergence(const DivergenceSpec& spec, const ForcingOptions& options);

/// Sum over x <= floor(T/lambda) of (k-2)^(3/2) / (6 sqrt(k (k-1) x)).
Decimal lower_bound_comparator(unsigned k, std::size_t T);

struct GrowthRow {
  std::size_t T;
  ExactAmount discrepancy;
  Decimal discrepancy_decimal;
  Decimal sqrt_kT;
  Decimal ratio;
  Decimal comparator;
  /// Discrepancy measured by simulation, when one was run.
  std::optional<ExactAmount> simulated;
};

/// Precomputed divergence terms for fast D(T) lookups over many horizons.
class DivergenceSeries {
 public:
  DivergenceSeries(unsigned k, std::size_t max_T);

  unsigned k() const noexcept { return params_.k(); }
  std::size_t max_T() const noexcept { return max_T_; }

  ExactAmount discrepancy(std::size_t T) const;
  Decimal comparator(std::size_t T) const;
  GrowthRow row(std::size_t T) const;

 private:
  TreeParams params_;
  std::size_t max_T_;
  std::vector<std::size_t> times_;        // t_x, index x (0 unused)
  std::vector<ExactAmount> terms_;        // per x
  std::vector<ExactAmount> prefix_;       // sum of terms_ for 1..x
  std::vector<Decimal> comparator_prefix_;
};

/// Bounding series for configurations with no surplus inside the window
/// (1-eps) lambda x < T - t < (1+eps) lambda x. Partial sums for x = 1..x_max.
struct ConvergenceSeries {
  std::vector<std::size_t> lower_times;
  std::vector<std::size_t> upper_times;
  std::vector<ExactAmount> lower_partial;
  std::vector<ExactAmount> upper_partial;
};

/// eps = eps_num / eps_den must lie strictly between 0 and 1.
ConvergenceSeries convergence_series(unsigned k, unsigned long eps_num, unsigned long eps_den, std::size_t x_max);

struct SphereReport {
  std::size_t x;
  ExactAmount con;
  /// |S_x| * max_t i(x,t)/k^t.
  ExactAmount bound_static;
  /// kappa * sqrt(x) * k^-x.
  Decimal bound_chips;
};

/// Per-sphere contributions of a decomposition next to both comparators, for
/// x = 1..max_x.
std::vector<SphereReport> sphere_report(const Decomposition& decomposition, std::size_t max_x,
                                        const BigInt& kappa, const TreeParams& params);

struct ChipCountRow {
  std::size_t R;
  /// Vertices carrying a surplus chip in the construction truncated at R.
  BigInt kappa;
  ExactAmount discrepancy;
  std::optional<Decimal> ratio;  // D / sqrt(ln kappa), absent while kappa <= 1
};

std::vector<ChipCountRow> chip_count_experiment(unsigned k, std::span<const std::size_t> radii);

}  // namespace rotortree
