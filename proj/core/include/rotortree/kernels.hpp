#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rotortree/bigint.hpp"
#include "rotortree/decimal.hpp"
#include "rotortree/exact.hpp"
#include "rotortree/tree.hpp"

namespace rotortree {

/// Memoized exact values of the walk-count kernel n(x,t) (number of length-t
/// walks between two vertices at distance x) and of the first-move kernel
/// i(x,t) = k n(x-1,t-1) - n(x,t).
///
/// Rows grow on demand. After freeze() the table refuses to grow, so a frozen
/// table whose rows cover every query can be read from several threads.
class KernelTable {
 public:
  explicit KernelTable(TreeParams params) : params_(params) {}

  const TreeParams& params() const noexcept { return params_; }
  unsigned k() const noexcept { return params_.k(); }

  BigInt n(std::size_t x, std::size_t t);
  BigInt i(std::size_t x, std::size_t t);

  /// Materializes rows for every t <= t_max.
  void reserve(std::size_t t_max);
  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }
  std::size_t rows() const noexcept { return n_rows_.size(); }

 private:
  void grow_n(std::size_t t);
  void grow_i(std::size_t t);

  TreeParams params_;
  bool frozen_ = false;
  // Row t holds entries for x = 0..t+1; anything beyond is zero.
  std::vector<std::vector<BigInt>> n_rows_;
  std::vector<std::vector<BigInt>> i_rows_;
};

enum class Move : int { Inward = -1, Outward = +1 };

BigInt path_count(std::size_t x, std::size_t t, KernelTable& table);

/// Default cap on the number of walks the brute-force oracles may enumerate.
inline constexpr std::uint64_t kDefaultOracleBudget = 50'000'000;

/// Enumerates all k^t walks from a depth-x vertex and counts those that end
/// at the origin. Throws BudgetExceeded when k^t exceeds the budget.
BigInt path_count_oracle(std::size_t x, std::size_t t, const TreeParams& params,
                         std::uint64_t budget = kDefaultOracleBudget);

/// H(x,t) = n(x,t) / k^t, the probability that a simple random walk started
/// at distance x sits on the origin after t steps.
ExactAmount hit_probability(std::size_t x, std::size_t t, KernelTable& table);

BigInt i_kernel(std::size_t x, std::size_t t, KernelTable& table);

/// Ballot-number closed form (k-1)^((t-x)/2+1) * (x/t) * C(t, (t+x)/2);
/// zero outside x,t > 0, x <= t, x ~ t.
BigInt i_kernel_closed(std::size_t x, std::size_t t, const TreeParams& params);

/// (k-1)^((t-x)/2+1) times the number of +-1 lattice paths from height x
/// that reach height 0 for the first time at step t, counted by enumeration.
BigInt ballot_oracle(std::size_t x, std::size_t t, const TreeParams& params,
                     std::uint64_t budget = kDefaultOracleBudget);

/// Influence of one rotor move from distance x in the given direction on the
/// origin's expected count t steps later: H(x+a, t-1) - H(x, t).
ExactAmount influence(std::size_t x, Move a, std::size_t t, KernelTable& table);

/// The same influence through i(x,t): i/k^t inward, -i/((k-1)k^t) outward.
ExactAmount influence_closed(std::size_t x, Move a, std::size_t t, const TreeParams& params);

/// Positive root of the quadratic governing the sign of
/// i(x,t+2)/k^(t+2) - i(x,t)/k^t.
double peak_threshold(std::size_t x, const TreeParams& params);

/// Smallest t ~ x, t >= x, maximizing i(x,t)/k^t. Starts from the root of the
/// sign quadratic and then hill-climbs on exact values.
std::size_t t_max(std::size_t x, const TreeParams& params);

/// True iff i(x,a)/k^a < i(x,b)/k^b, compared exactly.
bool peak_value_less(std::size_t x, std::size_t a, std::size_t b, const TreeParams& params);

struct Bracket {
  Decimal low;
  Decimal high;
};

/// (5/2) sqrt(n) (n/e)^n < n! < sqrt(15/2) sqrt(n) (n/e)^n, for n > 0.
Bracket stirling_bounds(const Decimal& n);

/// n^(n+1/2) / (c (n-m)^(n-m+1/2) m^(m+1/2)) with c = 3 (low) and c = 2
/// (high), bracketing C(n, m) for 0 < m < n.
Bracket binomial_bounds(const Decimal& n, const Decimal& m);

}  // namespace rotortree
