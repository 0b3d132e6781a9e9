#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rotortree/machines.hpp"

namespace rotortree {

/// Outcome of one verification check.
struct CheckResult {
  std::string id;    // "C1".."C11" for acceptance criteria, a short name otherwise
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// First counterexample, or a summary of the measured quantity.
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // 0 = no limit
};

enum class Suite { Kernels, Machines, Decomposition, Forcing, Bounds, All };

/// Throws InvalidArgument on an unknown name.
Suite parse_suite(std::string_view name);
std::string_view suite_name(Suite suite);

struct VerifyOptions {
  std::uint64_t seed = 20240607;
  std::size_t budget = kDefaultOccupancyBudget;
};

using Check = std::function<CheckResult(const VerifyOptions&)>;

struct CheckEntry {
  std::string id;
  Suite suite;
  Check run;
};

/// Every registered check in a fixed order.
const std::vector<CheckEntry>& all_checks();

/// Runs the checks of one suite (or all), in registration order.
std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options = {});

/// Runs the single check with the given id. Throws InvalidArgument if unknown.
CheckResult run_check(std::string_view id, const VerifyOptions& options = {});

/// The random even configurations used by the decomposition and machine
/// checks: k=3, support in the ball of radius 4, counts <= 50, random arrows
/// and per-vertex rotor sequences.
std::vector<ProppConfig> random_even_corpus(std::size_t count, std::uint64_t seed);

}  // namespace rotortree
