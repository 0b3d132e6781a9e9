#include "rotortree/kernels.hpp"

#include <cmath>
#include <string>

#include "rotortree/errors.hpp"

namespace rotortree {

namespace {

const BigInt& row_get(const std::vector<BigInt>& row, std::size_t x) {
  static const BigInt zero = 0;
  return x < row.size() ? row[x] : zero;
}

}  // namespace

void KernelTable::grow_n(std::size_t t) {
  if (t < n_rows_.size()) return;
  if (frozen_) throw Error(ErrorCode::FrozenTable, "n row " + std::to_string(t) + " not materialized");
  const unsigned long k = params_.k();
  while (n_rows_.size() <= t) {
    std::size_t s = n_rows_.size();
    std::vector<BigInt> row(s + 2);
    if (s == 0) {
      row[0] = 1;
    } else {
      const auto& prev = n_rows_[s - 1];
      row[0] = k * row_get(prev, 1);
      for (std::size_t x = 1; x <= s; ++x) {
        // Only x ~ s can be non-zero.
        if ((x + s) % 2) continue;
        row[x] = row_get(prev, x - 1) + (k - 1) * row_get(prev, x + 1);
      }
    }
    n_rows_.push_back(std::move(row));
  }
}

void KernelTable::grow_i(std::size_t t) {
  if (t < i_rows_.size()) return;
  if (frozen_) throw Error(ErrorCode::FrozenTable, "i row " + std::to_string(t) + " not materialized");
  const unsigned long k = params_.k();
  while (i_rows_.size() <= t) {
    std::size_t s = i_rows_.size();
    std::vector<BigInt> row(s + 2);
    if (s == 1) {
      row[1] = k - 1;
    } else if (s > 1) {
      const auto& prev = i_rows_[s - 1];
      for (std::size_t x = 1; x <= s; ++x) {
        if ((x + s) % 2) continue;
        row[x] = row_get(prev, x - 1) + (k - 1) * row_get(prev, x + 1);
      }
    }
    i_rows_.push_back(std::move(row));
  }
}

BigInt KernelTable::n(std::size_t x, std::size_t t) {
  if (x > t || (x + t) % 2) return 0;
  grow_n(t);
  return n_rows_[t][x];
}

BigInt KernelTable::i(std::size_t x, std::size_t t) {
  if (x == 0 || x > t || (x + t) % 2) return 0;
  grow_i(t);
  return i_rows_[t][x];
}

void KernelTable::reserve(std::size_t t_max) {
  grow_n(t_max);
  grow_i(t_max);
}

BigInt path_count(std::size_t x, std::size_t t, KernelTable& table) { return table.n(x, t); }

namespace {

// Walk enumeration on the explicit word; counts arrivals at the origin.
struct WalkCounter {
  unsigned k;
  std::vector<unsigned> word;
  std::uint64_t hits = 0;

  void run(std::size_t steps_left) {
    if (steps_left == 0) {
      if (word.empty()) ++hits;
      return;
    }
    for (unsigned d = 0; d < k; ++d) {
      if (!word.empty() && word.back() == d) {
        word.pop_back();
        run(steps_left - 1);
        word.push_back(d);
      } else {
        word.push_back(d);
        run(steps_left - 1);
        word.pop_back();
      }
    }
  }
};

void check_budget(const BigInt& work, std::uint64_t budget, const char* what) {
  if (work > BigInt(static_cast<unsigned long>(budget))) {
    throw Error(ErrorCode::BudgetExceeded, std::string(what) + " would enumerate " + work.get_str() +
                                               " items (budget " + std::to_string(budget) + ")");
  }
}

}  // namespace

BigInt path_count_oracle(std::size_t x, std::size_t t, const TreeParams& params, std::uint64_t budget) {
  check_budget(pow_ui(params.k(), t), budget, "path_count_oracle");
  WalkCounter counter{params.k(), {}, 0};
  for (std::size_t i = 0; i < x; ++i) counter.word.push_back(static_cast<unsigned>(i % 2));
  counter.run(t);
  return BigInt(static_cast<unsigned long>(counter.hits));
}

ExactAmount hit_probability(std::size_t x, std::size_t t, KernelTable& table) {
  return ExactAmount(table.k(), table.n(x, t), t);
}

BigInt i_kernel(std::size_t x, std::size_t t, KernelTable& table) { return table.i(x, t); }

BigInt i_kernel_closed(std::size_t x, std::size_t t, const TreeParams& params) {
  if (x == 0 || t == 0 || x > t || (t - x) % 2) return 0;
  BigInt r = pow_ui(params.k() - 1, (t - x) / 2 + 1) * binomial(t, (t + x) / 2) * BigInt(static_cast<unsigned long>(x));
  mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), t);
  return r;
}

namespace {

struct BallotCounter {
  std::uint64_t paths = 0;

  // Height must stay >= 1 until the final step lands on 0.
  void run(long height, std::size_t ups, std::size_t downs) {
    if (ups == 0 && downs == 0) {
      if (height == 0) ++paths;
      return;
    }
    if (height <= 0) return;
    if (ups) run(height + 1, ups - 1, downs);
    if (downs) run(height - 1, ups, downs - 1);
  }
};

}  // namespace

BigInt ballot_oracle(std::size_t x, std::size_t t, const TreeParams& params, std::uint64_t budget) {
  if (x == 0 || t == 0 || x > t || (t - x) % 2) return 0;
  std::size_t ups = (t - x) / 2;
  std::size_t downs = (t + x) / 2;
  check_budget(binomial(t, ups), budget, "ballot_oracle");
  BallotCounter counter;
  counter.run(static_cast<long>(x), ups, downs);
  return pow_ui(params.k() - 1, ups + 1) * BigInt(static_cast<unsigned long>(counter.paths));
}

ExactAmount influence(std::size_t x, Move a, std::size_t t, KernelTable& table) {
  if (x == 0 || t == 0) {
    throw Error(ErrorCode::InvalidArgument, "influence needs x >= 1 and t >= 1");
  }
  std::size_t moved = a == Move::Inward ? x - 1 : x + 1;
  return hit_probability(moved, t - 1, table) - hit_probability(x, t, table);
}

ExactAmount influence_closed(std::size_t x, Move a, std::size_t t, const TreeParams& params) {
  if (x == 0 || t == 0) {
    throw Error(ErrorCode::InvalidArgument, "influence needs x >= 1 and t >= 1");
  }
  BigInt i = i_kernel_closed(x, t, params);
  if (a == Move::Outward) {
    // (k-1) divides every non-zero i(x,t).
    mpz_divexact_ui(i.get_mpz_t(), i.get_mpz_t(), params.k() - 1);
    i = -i;
  }
  return ExactAmount(params.k(), std::move(i), t);
}

double peak_threshold(std::size_t x, const TreeParams& params) {
  const long double k = params.k();
  const long double xx = static_cast<long double>(x);
  long double disc = 8 * k * k * k - 4 * k * k - 8 * k + 4 + k * k * (k - 2) * (k - 2) * xx * xx;
  return static_cast<double>((std::sqrt(disc) - 2 * k * k + 2 * k - 2) / ((k - 2) * (k - 2)));
}

bool peak_value_less(std::size_t x, std::size_t a, std::size_t b, const TreeParams& params) {
  // i(x,a) k^b < i(x,b) k^a, scaled by k^min(a,b).
  BigInt lhs = i_kernel_closed(x, a, params);
  BigInt rhs = i_kernel_closed(x, b, params);
  if (a < b) lhs *= pow_ui(params.k(), b - a);
  if (b < a) rhs *= pow_ui(params.k(), a - b);
  return lhs < rhs;
}

std::size_t t_max(std::size_t x, const TreeParams& params) {
  if (x == 0) throw Error(ErrorCode::InvalidArgument, "t_max needs x >= 1");
  double root = peak_threshold(x, params);
  std::size_t t = x;
  if (root > static_cast<double>(x)) t = static_cast<std::size_t>(std::ceil(root));
  if ((t + x) % 2) ++t;
  // Exact local search; ties resolve towards the smaller t.
  while (t >= x + 2 && !peak_value_less(x, t - 2, t, params)) t -= 2;
  while (peak_value_less(x, t, t + 2, params)) t += 2;
  return t;
}

Bracket stirling_bounds(const Decimal& n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "Stirling bracket needs n > 0");
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const Decimal e = boost::multiprecision::exp(Decimal(1));
  Decimal core = sqrt(n) * pow(n / e, n);
  return {Decimal(5) / 2 * core, sqrt(Decimal(15) / 2) * core};
}

Bracket binomial_bounds(const Decimal& n, const Decimal& m) {
  if (m <= 0 || n <= m) throw Error(ErrorCode::InvalidArgument, "binomial bracket needs 0 < m < n");
  using boost::multiprecision::pow;
  const Decimal half = Decimal(1) / 2;
  Decimal core = pow(n, n + half) / (pow(n - m, n - m + half) * pow(m, m + half));
  return {core / 3, core / 2};
}

}  // namespace rotortree
