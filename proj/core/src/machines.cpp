#include "rotortree/machines.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "rotortree/errors.hpp"

namespace rotortree {

RotorPolicy::RotorPolicy(TreeParams params) : params_(params), canonical_(params.k()) {
  std::iota(canonical_.begin(), canonical_.end(), 0u);
}

void RotorPolicy::set_sequence(const Vertex& v, std::vector<unsigned> order) {
  const unsigned k = params_.k();
  std::vector<unsigned> inverse(k, k);
  if (order.size() != k) {
    throw Error(ErrorCode::InvalidArgument, "rotor sequence at '" + v.to_string() + "' has " +
                                                std::to_string(order.size()) + " entries, expected " +
                                                std::to_string(k));
  }
  for (unsigned p = 0; p < k; ++p) {
    if (order[p] >= k || inverse[order[p]] != k) {
      throw Error(ErrorCode::InvalidArgument,
                  "rotor sequence at '" + v.to_string() + "' is not a permutation of 0..k-1");
    }
    inverse[order[p]] = p;
  }
  if (order == canonical_) {
    overrides_.erase(v);
    inverses_.erase(v);
    return;
  }
  overrides_[v] = std::move(order);
  inverses_[v] = std::move(inverse);
}

std::span<const unsigned> RotorPolicy::sequence(const Vertex& v) const {
  if (!overrides_.empty()) {
    if (auto it = overrides_.find(v); it != overrides_.end()) return it->second;
  }
  return canonical_;
}

unsigned RotorPolicy::position(const Vertex& v, Direction d) const {
  if (!inverses_.empty()) {
    if (auto it = inverses_.find(v); it != inverses_.end()) return it->second[d.index];
  }
  return d.index;
}

Direction RotorPolicy::advance(const Vertex& v, Direction d, unsigned long steps) const {
  auto seq = sequence(v);
  return Direction{seq[(position(v, d) + steps) % seq.size()]};
}

Direction default_direction(const Vertex& v, DefaultRotor rule) {
  if (v.is_origin()) return Direction{0};
  if (rule == DefaultRotor::TowardOrigin) return Direction{v.last_letter()};
  return Direction{v.last_letter() == 0 ? 1u : 0u};
}

ProppConfig::ProppConfig(TreeParams params, DefaultRotor rule)
    : params_(params), default_rotor_(rule), policy_(params) {}

void ProppConfig::set_even(bool even) {
  if (even) {
    for (const auto& [v, c] : chips_) {
      if (v.depth() % 2) {
        throw Error(ErrorCode::ParityViolation,
                    "chips on odd-depth vertex '" + v.to_string() + "' in an even configuration");
      }
    }
  }
  even_ = even;
}

BigInt ProppConfig::chips_at(const Vertex& v) const {
  auto it = chips_.find(v);
  return it == chips_.end() ? BigInt(0) : it->second;
}

Direction ProppConfig::rotor_at(const Vertex& v) const {
  auto it = rotors_.find(v);
  return it == rotors_.end() ? default_direction(v, default_rotor_) : it->second;
}

void ProppConfig::set_chips(const Vertex& v, BigInt count) {
  if (sgn(count) < 0) throw Error(ErrorCode::InvalidArgument, "negative chip count at '" + v.to_string() + "'");
  if (sgn(count) == 0) {
    chips_.erase(v);
    return;
  }
  if (even_ && v.depth() % 2) {
    throw Error(ErrorCode::ParityViolation,
                "chips on odd-depth vertex '" + v.to_string() + "' in an even configuration");
  }
  chips_[v] = std::move(count);
}

void ProppConfig::add_chips(const Vertex& v, const BigInt& count) { set_chips(v, chips_at(v) + count); }

void ProppConfig::set_rotor(const Vertex& v, Direction d) {
  if (d.index >= params_.k()) throw Error(ErrorCode::LetterOutOfRange, "rotor direction " + std::to_string(d.index));
  rotors_[v] = d;
}

BigInt ProppConfig::total_chips() const {
  BigInt total = 0;
  for (const auto& [v, c] : chips_) total += c;
  return total;
}

bool operator==(const ProppConfig& a, const ProppConfig& b) {
  if (a.params_ != b.params_ || a.chips_ != b.chips_) return false;
  for (const auto& [v, d] : a.rotors_) {
    if (b.rotor_at(v) != d) return false;
  }
  for (const auto& [v, d] : b.rotors_) {
    if (a.rotor_at(v) != d) return false;
  }
  return true;
}

OutflowSplit outflow_split(const BigInt& c, Direction rotor, std::span<const unsigned> sequence) {
  const unsigned long k = sequence.size();
  auto it = std::find(sequence.begin(), sequence.end(), rotor.index);
  if (it == sequence.end()) throw Error(ErrorCode::InvalidArgument, "rotor not in its sequence");
  const unsigned long pos = static_cast<unsigned long>(it - sequence.begin());

  BigInt q;
  const unsigned long r = mpz_fdiv_q_ui(q.get_mpz_t(), c.get_mpz_t(), k);
  OutflowSplit out{std::vector<BigInt>(k), Direction{sequence[(pos + r) % k]}};
  for (unsigned long j = 0; j < k; ++j) {
    out.counts[sequence[(pos + j) % k]] = j < r ? q + 1 : q;
  }
  return out;
}

namespace {

// Applies one round to `config` in place. Rotors only change where chips
// leave, so they are updated without copying the rotor map.
void step_inplace(ProppConfig& config, ChipMap& chips, RotorMap& rotors, std::span<const Vertex> order,
                  std::size_t budget) {
  const TreeParams& params = config.params();
  const unsigned long k = params.k();
  ChipMap next;
  next.reserve(chips.size() * 2);

  BigInt q;
  for (const Vertex& v : order) {
    const BigInt& c = chips.at(v);
    const Direction rotor = config.rotor_at(v);
    auto seq = config.policy().sequence(v);
    const unsigned long pos = config.policy().position(v, rotor);
    const unsigned long r = mpz_fdiv_q_ui(q.get_mpz_t(), c.get_mpz_t(), k);
    for (unsigned long j = 0; j < k; ++j) {
      if (j >= r && sgn(q) == 0) break;
      Vertex w = neighbor(v, Direction{seq[(pos + j) % k]}, params);
      auto [slot, inserted] = next.try_emplace(std::move(w));
      slot->second += q;
      if (j < r) slot->second += 1;
    }
    if (r != 0) rotors[v] = Direction{seq[(pos + r) % k]};
  }
  if (next.size() > budget) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(next.size()) + " occupied vertices exceed the budget of " +
                                               std::to_string(budget));
  }
  chips = std::move(next);
}

std::vector<Vertex> occupied_order(const ChipMap& chips) {
  std::vector<Vertex> order;
  order.reserve(chips.size());
  for (const auto& [v, c] : chips) order.push_back(v);
  return order;
}

}  // namespace

ProppConfig propp_step_ordered(const ProppConfig& config, std::span<const Vertex> order, std::size_t budget) {
  if (order.size() != config.chips_.size()) {
    throw Error(ErrorCode::InvalidArgument, "visit order does not list every occupied vertex once");
  }
  std::unordered_set<Vertex, VertexHash> seen(order.begin(), order.end());
  if (seen.size() != order.size()) throw Error(ErrorCode::InvalidArgument, "visit order repeats a vertex");

  ProppConfig out = config;
  out.even_ = false;
  step_inplace(out, out.chips_, out.rotors_, order, budget);
  return out;
}

ProppConfig propp_step(const ProppConfig& config, std::size_t budget) {
  auto order = occupied_order(config.chips());
  return propp_step_ordered(config, order, budget);
}

void record_odd_moves(const ProppConfig& config, std::size_t time, OddMoveSchedule& schedule) {
  const unsigned long k = config.k();
  for (const auto& [v, c] : config.chips()) {
    unsigned long r = mpz_fdiv_ui(c.get_mpz_t(), k);
    if (r != 0) schedule[v].push_back(OddMove{time, static_cast<unsigned>(r), config.rotor_at(v)});
  }
}

BigInt ProppTrajectory::chips_at(const Vertex& v, std::size_t t) const {
  if (t > horizon_) throw Error(ErrorCode::InvalidArgument, "time beyond the trajectory horizon");
  if (!chips_.empty()) {
    auto it = chips_[t].find(v);
    return it == chips_[t].end() ? BigInt(0) : it->second;
  }
  if (auto it = watched_.find(v); it != watched_.end()) return it->second[t];
  throw Error(ErrorCode::InvalidArgument, "vertex '" + v.to_string() + "' was neither recorded nor watched");
}

Direction ProppTrajectory::rotor_at(const Vertex& v, std::size_t t) const {
  if (t > horizon_) throw Error(ErrorCode::InvalidArgument, "time beyond the trajectory horizon");
  if (rotors_.empty()) throw Error(ErrorCode::InvalidArgument, "trajectory was run without history");
  auto it = rotors_[t].find(v);
  return it == rotors_[t].end() ? default_direction(v, initial_.default_rotor()) : it->second;
}

ProppTrajectory propp_run(const ProppConfig& config, std::size_t T, const RunOptions& options,
                          const StepObserver& observer) {
  ProppTrajectory traj(config, config);
  traj.horizon_ = T;
  traj.total_ = config.total_chips();
  ProppConfig& cur = traj.final_;
  cur.set_even(false);
  for (const Vertex& w : options.watch) traj.watched_[w].reserve(T + 1);

  for (std::size_t t = 0;; ++t) {
    if (observer) observer(t, cur);
    if (options.keep_history) {
      traj.chips_.push_back(cur.chips());
      traj.rotors_.push_back(cur.rotors());
    }
    for (auto& [w, series] : traj.watched_) series.push_back(cur.chips_at(w));
    if (t == T) break;
    record_odd_moves(cur, t, traj.schedule_);
    auto order = occupied_order(cur.chips());
    step_inplace(cur, cur.chips_, cur.rotors_, order, options.budget);
  }
  return traj;
}

LinearState::LinearState(TreeParams params, const ChipMap& chips) : params_(params) {
  for (const auto& [v, c] : chips) {
    if (sgn(c) < 0) throw Error(ErrorCode::InvalidArgument, "negative chip count");
    if (sgn(c) > 0) masses_.emplace(v, ExactAmount(params.k(), c));
  }
}

ExactAmount LinearState::mass_at(const Vertex& v) const {
  auto it = masses_.find(v);
  return it == masses_.end() ? ExactAmount::zero(params_.k()) : it->second;
}

ExactAmount LinearState::total() const {
  ExactAmount sum = ExactAmount::zero(params_.k());
  for (const auto& [v, m] : masses_) sum += m;
  return sum;
}

LinearState linear_step(const LinearState& state, std::size_t budget) {
  const unsigned k = state.params_.k();
  LinearState out(state.params_);
  out.time_ = state.time_ + 1;
  out.masses_.reserve(state.masses_.size() * 2);
  for (const auto& [v, m] : state.masses_) {
    ExactAmount share = m.scaled_down(1);
    for (unsigned d = 0; d < k; ++d) {
      auto [slot, inserted] = out.masses_.try_emplace(neighbor(v, Direction{d}, state.params_), k);
      slot->second += share;
    }
  }
  if (out.masses_.size() > budget) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(out.masses_.size()) +
                                               " occupied vertices exceed the budget of " + std::to_string(budget));
  }
  return out;
}

LinearState linear_run(const LinearState& state, std::size_t T, std::size_t budget) {
  LinearState cur = state;
  for (std::size_t t = 0; t < T; ++t) cur = linear_step(cur, budget);
  return cur;
}

ExactAmount linear_analytic(const ChipMap& initial, std::size_t T, const Vertex& target, KernelTable& table) {
  BigInt numerator = 0;
  for (const auto& [v, c] : initial) numerator += c * table.n(distance(v, target), T);
  return ExactAmount(table.k(), std::move(numerator), T);
}

}  // namespace rotortree
