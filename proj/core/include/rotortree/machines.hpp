#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rotortree/bigint.hpp"
#include "rotortree/exact.hpp"
#include "rotortree/kernels.hpp"
#include "rotortree/tree.hpp"

namespace rotortree {

using ChipMap = std::unordered_map<Vertex, BigInt, VertexHash>;
using RotorMap = std::unordered_map<Vertex, Direction, VertexHash>;

struct RunOptions;
class ProppTrajectory;

/// Cap on simultaneously occupied vertices before a run aborts.
inline constexpr std::size_t kDefaultOccupancyBudget = 50'000'000;

/// Rotor sequences: the cyclic order in which each vertex serves its
/// neighbors. Every vertex uses 0,1,...,k-1 unless overridden.
class RotorPolicy {
 public:
  explicit RotorPolicy(TreeParams params);

  const TreeParams& params() const noexcept { return params_; }

  /// Installs a per-vertex cycle; `order` must be a permutation of 0..k-1.
  void set_sequence(const Vertex& v, std::vector<unsigned> order);
  bool has_overrides() const noexcept { return !overrides_.empty(); }
  const std::unordered_map<Vertex, std::vector<unsigned>, VertexHash>& overrides() const noexcept {
    return overrides_;
  }

  std::span<const unsigned> sequence(const Vertex& v) const;
  /// Position of d within v's cycle.
  unsigned position(const Vertex& v, Direction d) const;
  /// NEXT^steps(d) at vertex v.
  Direction advance(const Vertex& v, Direction d, unsigned long steps) const;

 private:
  TreeParams params_;
  std::vector<unsigned> canonical_;
  std::unordered_map<Vertex, std::vector<unsigned>, VertexHash> overrides_;
  std::unordered_map<Vertex, std::vector<unsigned>, VertexHash> inverses_;
};

enum class DefaultRotor { Canonical, TowardOrigin };

/// Initial arrow of a vertex whose rotor was never set explicitly.
/// Canonical: direction 0, or 1 when 0 points to the origin.
/// TowardOrigin: the inward letter (direction 0 at the origin itself).
Direction default_direction(const Vertex& v, DefaultRotor rule);

/// Chip counts and rotor arrows of the Propp machine at one instant.
class ProppConfig {
 public:
  explicit ProppConfig(TreeParams params, DefaultRotor rule = DefaultRotor::Canonical);

  const TreeParams& params() const noexcept { return params_; }
  unsigned k() const noexcept { return params_.k(); }

  bool even() const noexcept { return even_; }
  /// Asserting evenness validates that only even-depth vertices hold chips.
  void set_even(bool even);

  DefaultRotor default_rotor() const noexcept { return default_rotor_; }
  const RotorPolicy& policy() const noexcept { return policy_; }
  RotorPolicy& policy() noexcept { return policy_; }

  const ChipMap& chips() const noexcept { return chips_; }
  const RotorMap& rotors() const noexcept { return rotors_; }

  BigInt chips_at(const Vertex& v) const;
  Direction rotor_at(const Vertex& v) const;

  void set_chips(const Vertex& v, BigInt count);
  void add_chips(const Vertex& v, const BigInt& count);
  void set_rotor(const Vertex& v, Direction d);

  BigInt total_chips() const;
  std::size_t occupied() const noexcept { return chips_.size(); }

  /// Same chips and same effective rotor at every vertex either map touches.
  friend bool operator==(const ProppConfig& a, const ProppConfig& b);

 private:
  friend ProppConfig propp_step_ordered(const ProppConfig&, std::span<const Vertex>, std::size_t);
  friend ProppTrajectory propp_run(const ProppConfig&, std::size_t, const RunOptions&,
                                   const std::function<void(std::size_t, const ProppConfig&)>&);

  TreeParams params_;
  bool even_ = false;
  DefaultRotor default_rotor_;
  RotorPolicy policy_;
  ChipMap chips_;
  RotorMap rotors_;
};

struct OutflowSplit {
  std::vector<BigInt> counts;  // indexed by direction
  Direction new_rotor;
};

/// Sends c chips one after another along the rotor cycle starting at `rotor`.
/// The direction at cycle offset p receives #{j < c : j = p mod k}.
OutflowSplit outflow_split(const BigInt& c, Direction rotor, std::span<const unsigned> sequence);

/// One simultaneous round: outflows are computed from the current state for
/// every occupied vertex, then all arrivals are summed.
ProppConfig propp_step(const ProppConfig& config, std::size_t budget = kDefaultOccupancyBudget);

/// Same round, visiting occupied vertices in the given order. `order` must list
/// every occupied vertex exactly once. Exposed to test order independence.
ProppConfig propp_step_ordered(const ProppConfig& config, std::span<const Vertex> order,
                               std::size_t budget = kDefaultOccupancyBudget);

/// One burst of surplus chips: at time `time` the vertex held a count whose
/// residue mod k is `residue` (non-zero), with the rotor at `phase`.
struct OddMove {
  std::size_t time;
  unsigned residue;
  Direction phase;

  friend bool operator==(const OddMove&, const OddMove&) = default;
};

/// Per vertex, every time-ordered odd burst. Full rotor cycles are dropped.
using OddMoveSchedule = std::unordered_map<Vertex, std::vector<OddMove>, VertexHash>;

struct RunOptions {
  std::size_t budget = kDefaultOccupancyBudget;
  /// Keep f(.,t) and ARR(.,t) for every t; otherwise only the final state.
  bool keep_history = true;
  /// Vertices whose chip series f(v,t) is recorded even without history.
  std::vector<Vertex> watch;
};

class ProppTrajectory {
 public:
  std::size_t horizon() const noexcept { return horizon_; }
  const ProppConfig& initial() const noexcept { return initial_; }
  const ProppConfig& final_state() const noexcept { return final_; }
  const OddMoveSchedule& schedule() const noexcept { return schedule_; }
  const BigInt& total_chips() const noexcept { return total_; }
  bool has_history() const noexcept { return !chips_.empty(); }

  /// f(v,t). Needs history or v in the watch list.
  BigInt chips_at(const Vertex& v, std::size_t t) const;
  /// ARR(v,t). Needs history.
  Direction rotor_at(const Vertex& v, std::size_t t) const;

  const ChipMap& chip_map(std::size_t t) const { return chips_.at(t); }
  const RotorMap& rotor_map(std::size_t t) const { return rotors_.at(t); }

 private:
  friend ProppTrajectory propp_run(const ProppConfig&, std::size_t, const RunOptions&,
                                   const std::function<void(std::size_t, const ProppConfig&)>&);

  ProppTrajectory(ProppConfig initial, ProppConfig current)
      : initial_(std::move(initial)), final_(std::move(current)) {}

  std::size_t horizon_ = 0;
  ProppConfig initial_;
  ProppConfig final_;
  BigInt total_ = 0;
  std::vector<ChipMap> chips_;
  std::vector<RotorMap> rotors_;
  std::unordered_map<Vertex, std::vector<BigInt>, VertexHash> watched_;
  OddMoveSchedule schedule_;
};

using StepObserver = std::function<void(std::size_t, const ProppConfig&)>;

/// Runs T rounds. The observer (optional) sees the state at every t = 0..T.
ProppTrajectory propp_run(const ProppConfig& config, std::size_t T, const RunOptions& options = {},
                          const StepObserver& observer = {});

/// Odd bursts of one configuration (residue and rotor phase at time `time`).
void record_odd_moves(const ProppConfig& config, std::size_t time, OddMoveSchedule& schedule);

/// The linear machine: every pile splits evenly among the k neighbors.
class LinearState {
 public:
  LinearState(TreeParams params, const ChipMap& chips);

  const TreeParams& params() const noexcept { return params_; }
  std::size_t time() const noexcept { return time_; }
  const std::unordered_map<Vertex, ExactAmount, VertexHash>& masses() const noexcept { return masses_; }

  ExactAmount mass_at(const Vertex& v) const;
  ExactAmount total() const;

 private:
  friend LinearState linear_step(const LinearState&, std::size_t);
  explicit LinearState(TreeParams params) : params_(params) {}

  TreeParams params_;
  std::unordered_map<Vertex, ExactAmount, VertexHash> masses_;
  std::size_t time_ = 0;
};

LinearState linear_step(const LinearState& state, std::size_t budget = kDefaultOccupancyBudget);
LinearState linear_run(const LinearState& state, std::size_t T,
                       std::size_t budget = kDefaultOccupancyBudget);

/// E(target, T) = sum_x f(x,0) H(dist(x,target), T).
ExactAmount linear_analytic(const ChipMap& initial, std::size_t T, const Vertex& target,
                            KernelTable& table);

}  // namespace rotortree
