#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rotortree/bigint.hpp"
#include "rotortree/kernels.hpp"
#include "rotortree/machines.hpp"
#include "rotortree/tree.hpp"

namespace rotortree {

/// Prescribed chip-count residues mod k on a finite set of (vertex, time)
/// cells. Cells are every vertex within `radius` at every time up to
/// `horizon`; with a cone apex T the radius at time t shrinks to T - t.
/// Residues not set explicitly are 0.
class ResidueTarget {
 public:
  ResidueTarget(TreeParams params, std::size_t horizon, std::size_t radius,
                std::optional<std::size_t> cone = std::nullopt);

  const TreeParams& params() const noexcept { return params_; }
  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t radius() const noexcept { return radius_; }
  std::optional<std::size_t> cone() const noexcept { return cone_; }

  /// Largest depth covered at time t, or nullopt if no vertex is.
  std::optional<std::size_t> radius_at(std::size_t t) const;
  bool covers(const Vertex& v, std::size_t t) const;

  /// Throws ParityViolation for a non-zero residue with depth !~ t.
  void set(const Vertex& v, std::size_t t, unsigned residue);
  unsigned residue(const Vertex& v, std::size_t t) const;

  const std::map<std::pair<Vertex, std::size_t>, unsigned>& entries() const noexcept { return residues_; }

 private:
  TreeParams params_;
  std::size_t horizon_;
  std::size_t radius_;
  std::optional<std::size_t> cone_;
  std::map<std::pair<Vertex, std::size_t>, unsigned> residues_;
};

/// One pile of epsilon * k^(stage+1) chips added at `vertex`.
struct Placement {
  std::size_t stage;
  Vertex vertex;
  unsigned epsilon;
};

struct ForcingStats {
  std::size_t simulations = 0;
  std::size_t stage_check_failures = 0;
  BigInt total_chips = 0;
};

struct ForcingResult {
  ProppConfig config;
  std::vector<Placement> placements;
  ForcingStats stats;
};

enum class ForcingMode {
  /// Re-simulate the configuration before every sphere.
  Resimulate,
  /// Simulate once per stage and add each pile's exact spread afterwards.
  AnalyticIncrement,
};

struct ForcingOptions {
  ForcingMode mode = ForcingMode::Resimulate;
  std::size_t budget = kDefaultOccupancyBudget;
  /// After each stage, re-simulate and count residue cells at times <= stage+1
  /// that no longer match.
  bool check_stages = false;
};

/// Chips delivered to one vertex at distance d from a pile of m chips after t
/// steps: (m / k^t) n(d,t). Needs k^t | m, which makes the spread independent
/// of the rotors.
BigInt pile_spread(const BigInt& m, std::size_t t, std::size_t d, KernelTable& table);

/// Builds an even initial configuration whose Propp evolution has
/// f(x,t) = target(x,t) mod k on every covered cell. Rotor arrows, sequences
/// and the default-arrow rule are taken from `rotor_init`; its chips are
/// ignored.
ForcingResult synthesize(const ResidueTarget& target, const ProppConfig& rotor_init,
                         const ForcingOptions& options = {});

struct ResidueMismatch {
  Vertex vertex;
  std::size_t time;
  unsigned expected;
  unsigned actual;
};

struct ResidueReport {
  std::size_t cells = 0;
  std::size_t failures = 0;
  std::vector<ResidueMismatch> examples;  // first few failures

  bool passed() const noexcept { return failures == 0; }
};

/// Simulates `config` to the target horizon and compares every covered cell.
/// `max_time` limits the check to times <= max_time.
ResidueReport verify_residues(const ProppConfig& config, const ResidueTarget& target,
                              std::size_t budget = kDefaultOccupancyBudget,
                              std::optional<std::size_t> max_time = std::nullopt);

}  // namespace rotortree
