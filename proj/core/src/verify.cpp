#include "rotortree/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include <gmpxx.h>

#include "rotortree/analysis.hpp"
#include "rotortree/decimal.hpp"
#include "rotortree/errors.hpp"
#include "rotortree/forcing.hpp"
#include "rotortree/kernels.hpp"

namespace rotortree {

namespace {

/// Counts checks and keeps the first counterexample.
class Tally {
 public:
  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = describe();
  }

  void fill(CheckResult& r, const std::string& summary) const {
    r.checks = checks_;
    r.failures = failures_;
    r.passed = failures_ == 0;
    r.detail = failures_ == 0 ? summary : first_;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream out;
  out << std::setprecision(10);
  (out << ... << parts);
  return out.str();
}

CheckResult start(std::string id, std::string name) {
  CheckResult r;
  r.id = std::move(id);
  r.name = std::move(name);
  return r;
}

std::string str(const ExactAmount& v) { return v.to_string(); }

std::vector<unsigned> random_cycle(unsigned k, std::mt19937_64& rng) {
  std::vector<unsigned> order(k);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

void randomize_rotors(ProppConfig& config, std::size_t radius, std::mt19937_64& rng) {
  const unsigned k = config.k();
  std::uniform_int_distribution<unsigned> dir(0, k - 1);
  std::bernoulli_distribution arrow(0.5);
  std::bernoulli_distribution cycle(1.0 / 3);
  for (const Vertex& v : ball_vertices(radius, config.params())) {
    if (arrow(rng)) config.set_rotor(v, Direction{dir(rng)});
    if (cycle(rng)) config.policy().set_sequence(v, random_cycle(k, rng));
  }
}

// ---------------------------------------------------------------- kernels

CheckResult check_kernel_oracle(const VerifyOptions&) {
  CheckResult r = start("C1", "path counts match explicit enumeration (k=3,4; x+t<=10)");
  r.limit_seconds = 30;
  Tally tally;
  for (unsigned k : {3u, 4u}) {
    TreeParams params(k);
    KernelTable table(params);
    for (std::size_t x = 0; x <= 10; ++x) {
      for (std::size_t t = 0; x + t <= 10; ++t) {
        BigInt fast = path_count(x, t, table);
        BigInt slow = path_count_oracle(x, t, params);
        tally.expect(fast == slow, [&] {
          return cat("k=", k, " x=", x, " t=", t, ": recurrence ", fast.get_str(), " vs enumeration ", slow.get_str());
        });
      }
    }
  }
  tally.fill(r, "all pairs agree");
  return r;
}

CheckResult check_ballot(const VerifyOptions&) {
  CheckResult r = start("C2", "i kernel: recursion = closed form (x<=40, t<=80) = first-passage count (x+t<=14)");
  r.limit_seconds = 30;
  Tally tally;
  for (unsigned k : {3u, 4u, 5u}) {
    TreeParams params(k);
    KernelTable table(params);
    for (std::size_t x = 1; x <= 40; ++x) {
      for (std::size_t t = x % 2; t <= 80; t += 2) {
        BigInt rec = i_kernel(x, t, table);
        BigInt closed = i_kernel_closed(x, t, params);
        tally.expect(rec == closed, [&] {
          return cat("k=", k, " x=", x, " t=", t, ": recursion ", rec.get_str(), " vs closed form ", closed.get_str());
        });
        if (x + t <= 14) {
          BigInt paths = ballot_oracle(x, t, params);
          tally.expect(rec == paths, [&] {
            return cat("k=", k, " x=", x, " t=", t, ": recursion ", rec.get_str(), " vs path count ", paths.get_str());
          });
        }
      }
    }
  }
  tally.fill(r, "all values agree");
  return r;
}

CheckResult check_influence(const VerifyOptions&) {
  CheckResult r = start("C3", "influence identities on the kernel grid");
  Tally tally;
  for (unsigned k : {3u, 4u, 5u}) {
    TreeParams params(k);
    KernelTable table(params);
    for (std::size_t x = 1; x <= 40; ++x) {
      for (std::size_t t = x % 2 == 0 ? 2 : 1; t <= 80; t += 2) {
        const BigInt i = table.i(x, t);
        ExactAmount in = influence(x, Move::Inward, t, table);
        ExactAmount out = influence(x, Move::Outward, t, table);
        ExactAmount want_in(k, i, t);
        BigInt scaled = i;
        mpz_divexact_ui(scaled.get_mpz_t(), scaled.get_mpz_t(), k - 1);
        ExactAmount want_out(k, -scaled, t);
        auto where = [&] { return cat("k=", k, " x=", x, " t=", t, ": "); };
        tally.expect(in == want_in, [&] { return where() + "inward " + str(in) + " vs " + str(want_in); });
        tally.expect(out == want_out, [&] { return where() + "outward " + str(out) + " vs " + str(want_out); });
        tally.expect(influence_closed(x, Move::Inward, t, params) == in,
                     [&] { return where() + "closed inward differs"; });
        tally.expect(influence_closed(x, Move::Outward, t, params) == out,
                     [&] { return where() + "closed outward differs"; });
        ExactAmount cycle = in + out * BigInt(k - 1);
        tally.expect(cycle.is_zero(), [&] { return where() + "one cycle sums to " + str(cycle); });
      }
    }
  }
  tally.fill(r, "all identities exact");
  return r;
}

CheckResult check_unimodality(const VerifyOptions&) {
  CheckResult r = start("C4", "i(x,t)/k^t is unimodal in t with |t_max - lambda x| <= 15 (k=3..8, x<=200)");
  r.limit_seconds = 120;
  Tally tally;
  double worst = 0;
  for (unsigned k = 3; k <= 8; ++k) {
    TreeParams params(k);
    const double lambda = static_cast<double>(k) / (k - 2);
    for (std::size_t x = 1; x <= 200; ++x) {
      const std::size_t t_end = static_cast<std::size_t>(std::floor(4 * lambda * x));
      // g(t+2)/g(t) = (k-1) t (t+1) / (k^2 (m+1) (t-m+1)), m = (t+x)/2.
      std::size_t peak = 0;
      bool descending = false;
      bool unimodal = true;
      for (std::size_t t = x; t + 2 <= t_end; t += 2) {
        const std::size_t m = (t + x) / 2;
        BigInt up = BigInt(k - 1) * t * (t + 1);
        BigInt down = BigInt(k) * k * (m + 1) * (t - m + 1);
        const int c = cmp(up, down);
        if (c > 0) {
          if (descending) unimodal = false;
        } else if (!descending) {
          descending = true;
          peak = t;
        }
      }
      if (!descending) peak = t_end - ((t_end - x) % 2);
      const std::size_t tm = t_max(x, params);
      const double offset = std::abs(static_cast<double>(tm) - lambda * x);
      worst = std::max(worst, offset);
      tally.expect(unimodal, [&] { return cat("k=", k, " x=", x, ": more than one local maximum"); });
      tally.expect(tm == peak, [&] { return cat("k=", k, " x=", x, ": t_max ", tm, " but scan peaks at ", peak); });
      tally.expect(offset <= 15, [&] { return cat("k=", k, " x=", x, ": |t_max - lambda x| = ", offset); });
    }
  }
  tally.fill(r, cat("max |t_max - lambda x| = ", worst));
  return r;
}

CheckResult check_harmonicity(const VerifyOptions&) {
  CheckResult r = start("harmonic", "H(x-1,t-1) + (k-1) H(x+1,t-1) = k H(x,t)");
  Tally tally;
  for (unsigned k : {3u, 4u, 5u, 8u}) {
    KernelTable table{TreeParams(k)};
    for (std::size_t t = 1; t <= 60; ++t) {
      for (std::size_t x = 1; x <= t + 1; ++x) {
        ExactAmount lhs = hit_probability(x - 1, t - 1, table) + hit_probability(x + 1, t - 1, table) * BigInt(k - 1);
        ExactAmount rhs = hit_probability(x, t, table) * BigInt(k);
        tally.expect(lhs == rhs, [&] { return cat("k=", k, " x=", x, " t=", t, ": ", str(lhs), " vs ", str(rhs)); });
      }
    }
  }
  tally.fill(r, "exact on the grid t<=60");
  return r;
}

CheckResult check_central_binomial(const VerifyOptions&) {
  CheckResult r = start("binomial", "C(2x, x+y) <= C(2x+2, x+1+y) for 0<=y<=x<=100");
  Tally tally;
  for (unsigned long x = 0; x <= 100; ++x) {
    for (unsigned long y = 0; y <= x; ++y) {
      BigInt a = binomial(2 * x, x + y);
      BigInt b = binomial(2 * x + 2, x + 1 + y);
      tally.expect(a <= b, [&] { return cat("x=", x, " y=", y); });
    }
  }
  tally.fill(r, "holds on the lattice");
  return r;
}

// ---------------------------------------------------------------- machines

CheckResult check_machine_invariants(const VerifyOptions& options) {
  CheckResult r = start("C11", "conservation, order independence, divisible piles");
  Tally tally;
  std::mt19937_64 rng(options.seed ^ 0x11);

  const auto corpus = random_even_corpus(100, options.seed);
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    ProppConfig state = corpus[c];
    const BigInt total = state.total_chips();
    for (std::size_t t = 0; t < 3; ++t) {
      ProppConfig next = propp_step(state, options.budget);
      tally.expect(next.total_chips() == total, [&] { return cat("config ", c, " t=", t, ": chips not conserved"); });
      std::vector<Vertex> order;
      for (const auto& entry : state.chips()) order.push_back(entry.first);
      for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        ProppConfig other = propp_step_ordered(state, order, options.budget);
        tally.expect(other == next, [&] { return cat("config ", c, " t=", t, ": order-dependent step"); });
      }
      state = std::move(next);
    }
    LinearState lin(state.params(), corpus[c].chips());
    lin = linear_run(lin, 3, options.budget);
    tally.expect(lin.total() == ExactAmount(state.k(), total),
                 [&] { return cat("config ", c, ": linear mass not conserved"); });
  }

  for (unsigned k : {3u, 4u}) {
    TreeParams params(k);
    const auto near = ball_vertices(2, params);
    std::uniform_int_distribution<std::size_t> pick(0, near.size() - 1);
    std::uniform_int_distribution<unsigned> mult(1, 3);
    for (std::size_t T = 1; T <= 6; ++T) {
      for (int trial = 0; trial < 5; ++trial) {
        ProppConfig config(params, trial % 2 ? DefaultRotor::TowardOrigin : DefaultRotor::Canonical);
        randomize_rotors(config, 2, rng);
        const int piles = 1 + trial % 3;
        for (int p = 0; p < piles; ++p) config.add_chips(near[pick(rng)], BigInt(mult(rng)) * pow_ui(k, T));
        RunOptions run;
        run.budget = options.budget;
        run.keep_history = false;
        auto traj = propp_run(config, T, run);
        LinearState lin = linear_run(LinearState(params, config.chips()), T, options.budget);
        ProppConfig expected = config;
        for (const auto& entry : config.chips()) expected.set_chips(entry.first, 0);
        bool integral = true;
        for (const auto& [v, mass] : lin.masses()) {
          if (!mass.is_integer()) integral = false;
          if (!mass.is_zero()) expected.set_chips(v, mass.numerator());
        }
        auto where = [&] { return cat("k=", k, " T=", T, " trial ", trial, ": "); };
        tally.expect(integral, [&] { return where() + "linear machine left fractional mass"; });
        tally.expect(traj.final_state() == expected,
                     [&] { return where() + "Propp state differs from the linear machine or rotors moved"; });
      }
    }
  }
  tally.fill(r, "all invariants hold");
  return r;
}

// ---------------------------------------------------------------- decomposition

CheckResult check_decomposition(const VerifyOptions& options) {
  CheckResult r = start("C5", "sum of contributions = f(0,T) - E(0,T) on 100 random even configs, T<=8");
  r.limit_seconds = 120;
  Tally tally;
  const auto corpus = random_even_corpus(100, options.seed);
  KernelTable table{TreeParams(3)};
  RunOptions run;
  run.budget = options.budget;
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    auto traj = propp_run(corpus[c], 8, run);
    for (std::size_t T = 0; T <= 8; ++T) {
      ExactAmount total = decompose(traj, T, table).total;
      ExactAmount d = discrepancy(traj, T, Vertex::origin(), table);
      tally.expect(total == d,
                   [&] { return cat("config ", c, " T=", T, ": contributions ", str(total), " vs discrepancy ", str(d)); });
    }
  }
  tally.fill(r, "exact for every config and T");
  return r;
}

CheckResult check_full_cycle(const VerifyOptions&) {
  CheckResult r = start("cycle", "k consecutive moves from one vertex contribute 0");
  Tally tally;
  for (unsigned k : {3u, 4u, 5u}) {
    TreeParams params(k);
    KernelTable table(params);
    RotorPolicy policy(params);
    for (const Vertex& v : ball_vertices(3, params)) {
      for (unsigned d = 0; d < k; ++d) {
        for (std::size_t rest = 1; rest <= 20; ++rest) {
          const OddMove burst{0, k, Direction{d}};
          ExactAmount sum = ExactAmount::zero(k);
          for (const auto& term : contribution_terms(v, std::span(&burst, 1), policy, rest, table)) sum += term.value;
          tally.expect(sum.is_zero(), [&] {
            return cat("k=", k, " vertex '", v.to_string(), "' phase ", d, " t=", rest, ": ", str(sum));
          });
        }
      }
    }
  }
  tally.fill(r, "exact cancellation");
  return r;
}

CheckResult check_sphere_cap(const VerifyOptions& options) {
  CheckResult r = start("sphere", "CON(S_x) <= |S_x| max_t i(x,t)/k^t on divergence configurations");
  Tally tally;
  ForcingOptions forcing;
  forcing.mode = ForcingMode::AnalyticIncrement;
  forcing.budget = options.budget;
  for (unsigned k : {3u, 4u}) {
    TreeParams params(k);
    KernelTable table(params);
    for (std::size_t T = 2; T <= 8; T += 2) {
      auto spec = make_divergence_spec(k, T);
      auto sim = simulate_divergence(spec, forcing);
      RunOptions run;
      run.budget = options.budget;
      run.keep_history = false;
      auto traj = propp_run(sim.forcing.config, T, run);
      auto dec = decompose(traj, T, table);
      for (const auto& row : sphere_report(dec, T, sim.forcing.stats.total_chips, params)) {
        tally.expect(row.con <= row.bound_static, [&] {
          return cat("k=", k, " T=", T, " x=", row.x, ": ", str(row.con), " > ", str(row.bound_static));
        });
      }
    }
  }
  tally.fill(r, "cap holds");
  return r;
}

// ---------------------------------------------------------------- forcing

CheckResult check_forcing(const VerifyOptions& options) {
  CheckResult r = start("C6", "forced configurations realize 20 random residue targets (k=3, radius 3, horizon 4)");
  r.limit_seconds = 300;
  Tally tally;
  TreeParams params(3);
  std::mt19937_64 rng(options.seed ^ 0x66);
  std::uniform_int_distribution<unsigned> residue(0, 2);
  std::size_t cells = 0;
  for (int trial = 0; trial < 20; ++trial) {
    ResidueTarget target(params, 4, 3);
    for (std::size_t t = 0; t <= 4; ++t) {
      for (const Vertex& v : ball_vertices(3, params)) {
        if ((v.depth() + t) % 2 == 0) target.set(v, t, residue(rng));
      }
    }
    ProppConfig rotors(params, trial % 2 ? DefaultRotor::TowardOrigin : DefaultRotor::Canonical);
    randomize_rotors(rotors, 4, rng);

    ForcingOptions forcing;
    forcing.budget = options.budget;
    forcing.check_stages = true;
    ForcingResult result = synthesize(target, rotors, forcing);
    ResidueReport report = verify_residues(result.config, target, options.budget);
    cells += report.cells;
    tally.expect(report.passed(), [&] {
      const auto& m = report.examples.front();
      return cat("trial ", trial, ": ", report.failures, " of ", report.cells, " cells wrong, first at '",
                 m.vertex.to_string(), "'@", m.time, " expected ", m.expected, " got ", m.actual);
    });
    tally.expect(result.stats.stage_check_failures == 0, [&] {
      return cat("trial ", trial, ": a later stage disturbed ", result.stats.stage_check_failures, " earlier cells");
    });

    forcing.mode = ForcingMode::AnalyticIncrement;
    forcing.check_stages = false;
    ForcingResult fast = synthesize(target, rotors, forcing);
    tally.expect(fast.config == result.config,
                 [&] { return cat("trial ", trial, ": incremental synthesis differs from re-simulation"); });
  }
  tally.fill(r, cat(cells, " cells verified"));
  return r;
}

CheckResult check_divergence_exact(const VerifyOptions& options) {
  CheckResult r = start("C7", "simulated divergence configuration matches the closed sum (k=3, T=4..12)");
  r.limit_seconds = 600;
  Tally tally;
  ForcingOptions forcing;
  forcing.mode = ForcingMode::AnalyticIncrement;
  forcing.budget = options.budget;
  const ExactAmount four_ninths(3, 4, 2);
  const ExactAmount t6(3, 188, 5);
  for (std::size_t T = 4; T <= 12; T += 2) {
    auto spec = make_divergence_spec(3, T);
    ExactAmount analytic = divergence_analytic(spec);
    auto sim = simulate_divergence(spec, forcing);
    tally.expect(sim.simulated == analytic,
                 [&] { return cat("T=", T, ": simulated ", str(sim.simulated), " vs analytic ", str(analytic)); });
    if (T == 4) tally.expect(analytic == four_ninths, [&] { return "T=4: " + str(analytic) + " is not 4/9"; });
    if (T == 6) tally.expect(analytic == t6, [&] { return "T=6: " + str(analytic) + " is not 188/243"; });
  }
  tally.fill(r, "exact for all T");
  return r;
}

// ---------------------------------------------------------------- bounds

struct Band {
  unsigned k;
  double low;
  double high;
};

// D(T)/sqrt(kT) over 256 <= T <= 10^4, measured once and frozen.
constexpr Band kGrowthBands[] = {{3, 0.2955, 0.3215}, {4, 0.8060, 0.9030}, {5, 1.3770, 1.5685}};

CheckResult check_growth(const VerifyOptions&) {
  CheckResult r = start("C8", "D(T) exceeds the comparator and D(T)/sqrt(kT) stays in a band (k=3,4,5; T<=10^4)");
  r.limit_seconds = 120;
  Tally tally;
  constexpr std::size_t kMaxT = 10000;
  std::ostringstream summary;
  summary << std::setprecision(6);
  for (const Band& band : kGrowthBands) {
    DivergenceSeries series(band.k, kMaxT);
    const std::size_t t1 = divergence_time(1, band.k);
    std::vector<double> ratio(kMaxT + 1, 0.0);
    double lo = 1e300;
    double hi = 0;
    for (std::size_t T = 2; T <= kMaxT; T += 2) {
      if (t1 > T) continue;  // empty sum
      GrowthRow row = series.row(T);
      tally.expect(row.discrepancy_decimal > row.comparator, [&] {
        return cat("k=", band.k, " T=", T, ": D=", format_decimal(row.discrepancy_decimal),
                   " <= comparator ", format_decimal(row.comparator));
      });
      ratio[T] = to_double(row.ratio);
      if (T >= 256) {
        lo = std::min(lo, ratio[T]);
        hi = std::max(hi, ratio[T]);
        tally.expect(ratio[T] >= band.low && ratio[T] <= band.high, [&] {
          return cat("k=", band.k, " T=", T, ": ratio ", ratio[T], " outside [", band.low, ", ", band.high, "]");
        });
      }
    }
    for (std::size_t T = 256; 2 * T <= kMaxT; T += 2) {
      const double change = std::abs(ratio[2 * T] / ratio[T] - 1);
      tally.expect(change < 0.2, [&] { return cat("k=", band.k, " T=", T, ": ratio changes by ", change, " at 2T"); });
    }
    summary << "k=" << band.k << " ratio in [" << lo << ", " << hi << "]; ";
  }
  std::string s = summary.str();
  tally.fill(r, s.substr(0, s.size() - 2));
  return r;
}

CheckResult check_convergence(const VerifyOptions&) {
  CheckResult r = start("C9", "bounding series change by < 1e-6 between x=100 and x=200 (k=3,4; eps=1/4,1/2)");
  r.limit_seconds = 60;
  Tally tally;
  std::ostringstream summary;
  summary << std::setprecision(4) << "changes:";
  for (unsigned k : {3u, 4u}) {
    for (unsigned long den : {4ul, 2ul}) {
      ConvergenceSeries s = convergence_series(k, 1, den, 200);
      for (int branch = 0; branch < 2; ++branch) {
        const auto& partial = branch == 0 ? s.lower_partial : s.upper_partial;
        const double change = to_double(to_decimal(partial[199] - partial[99]));
        summary << " k=" << k << ",eps=1/" << den << (branch == 0 ? ",lower=" : ",upper=") << change;
        tally.expect(std::abs(change) < 1e-6, [] { return std::string(); });
      }
    }
  }
  tally.fill(r, summary.str());
  r.detail = summary.str();
  return r;
}

CheckResult check_chip_trend(const VerifyOptions&) {
  CheckResult r = start("C10", "D(R)/sqrt(ln kappa) is stable and ln kappa grows like R ln(k-1) (k=3)");
  r.limit_seconds = 60;
  Tally tally;
  const std::size_t radii[] = {4, 8, 16, 32, 64};
  auto rows = chip_count_experiment(3, radii);
  std::ostringstream summary;
  summary << std::setprecision(5) << "ratios";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    summary << ' ' << to_double(*rows[i].ratio);
    if (i == 0 || rows[i - 1].R < 8) continue;
    const double change = std::abs(to_double(*rows[i].ratio / *rows[i - 1].ratio) - 1);
    tally.expect(change < 0.5,
                 [&] { return cat("R=", rows[i - 1].R, " -> ", rows[i].R, ": ratio changes by ", change); });
  }
  const auto& a = rows[rows.size() - 2];
  const auto& b = rows.back();
  const double slope =
      to_double((boost::multiprecision::log(to_decimal(b.kappa)) - boost::multiprecision::log(to_decimal(a.kappa))) /
                Decimal(b.R - a.R));
  const double expected = std::log(2.0);
  tally.expect(std::abs(slope / expected - 1) < 0.1,
               [&] { return cat("slope of ln kappa is ", slope, ", expected ", expected); });
  summary << "; slope " << slope;
  tally.fill(r, summary.str());
  return r;
}

CheckResult check_lemma2(const VerifyOptions& options) {
  CheckResult r = start("summation", "|sum A_i f_i| <= max f for nondecreasing f >= 0 and partial sums of A in [-1,1]");
  Tally tally;
  auto holds = [](const std::vector<mpq_class>& a, const std::vector<mpq_class>& f) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * f[i];
    return abs(s) <= f.back();
  };
  auto bounded = [](const std::vector<mpq_class>& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      mpq_class s = 0;
      for (std::size_t j = i; j < a.size(); ++j) {
        s += a[j];
        if (abs(s) > 1) return false;
      }
    }
    return true;
  };

  // Exhaustive: A in {-1,0,1}^n and f in {0..3} nondecreasing, n <= 5.
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t a_count = 1;
    for (std::size_t i = 0; i < n; ++i) a_count *= 3;
    for (std::size_t code = 0; code < a_count; ++code) {
      std::vector<mpq_class> a(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 3) a[i] = static_cast<long>(c % 3) - 1;
      if (!bounded(a)) continue;
      std::vector<mpq_class> f(n, 0);
      std::function<void(std::size_t, long)> each = [&](std::size_t i, long from) {
        if (i == n) {
          tally.expect(holds(a, f), [&] { return cat("exhaustive case n=", n, " code ", code); });
          return;
        }
        for (long v = from; v <= 3; ++v) {
          f[i] = v;
          each(i + 1, v);
        }
      };
      each(0, 0);
    }
  }

  // Random rational prefix sums in [-1/2, 1/2] keep every contiguous sum in [-1, 1].
  std::mt19937_64 rng(options.seed ^ 0x22);
  std::uniform_int_distribution<long> prefix(-500, 500);
  std::uniform_int_distribution<long> step(0, 7);
  std::uniform_int_distribution<std::size_t> length(1, 40);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = length(rng);
    std::vector<mpq_class> a(n);
    std::vector<mpq_class> f(n);
    mpq_class prev = 0;
    long level = 0;
    for (std::size_t i = 0; i < n; ++i) {
      mpq_class p(prefix(rng), 1000);
      p.canonicalize();
      a[i] = p - prev;
      prev = p;
      level += step(rng);
      f[i] = level;
    }
    tally.expect(holds(a, f), [&] { return cat("random trial ", trial); });
  }
  tally.fill(r, "no counterexample");
  return r;
}

CheckResult check_stirling(const VerifyOptions&) {
  CheckResult r = start("stirling", "Stirling and binomial brackets contain n! and C(n,m)");
  Tally tally;
  Decimal factorial = 1;
  for (unsigned n = 1; n <= 60; ++n) {
    factorial *= n;
    Bracket b = stirling_bounds(Decimal(n));
    tally.expect(b.low < factorial && factorial < b.high, [&] { return cat("n=", n, "! outside the bracket"); });
    for (unsigned m = 1; m < n; ++m) {
      Bracket c = binomial_bounds(Decimal(n), Decimal(m));
      Decimal exact = to_decimal(binomial(n, m));
      tally.expect(c.low < exact && exact < c.high, [&] { return cat("C(", n, ",", m, ") outside the bracket"); });
    }
  }
  tally.fill(r, "brackets hold for n<=60");
  return r;
}

}  // namespace

std::vector<ProppConfig> random_even_corpus(std::size_t count, std::uint64_t seed) {
  TreeParams params(3);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution occupied(0.4);
  std::uniform_int_distribution<long> chips(1, 50);
  const auto ball = ball_vertices(4, params);
  std::vector<ProppConfig> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ProppConfig config(params, i % 2 ? DefaultRotor::TowardOrigin : DefaultRotor::Canonical);
    for (const Vertex& v : ball) {
      if (v.depth() % 2 == 0 && occupied(rng)) config.set_chips(v, chips(rng));
    }
    if (config.occupied() == 0) config.set_chips(Vertex::origin(), chips(rng));
    randomize_rotors(config, 6, rng);
    config.set_even(true);
    corpus.push_back(std::move(config));
  }
  return corpus;
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::Kernels, Suite::Machines, Suite::Decomposition, Suite::Forcing, Suite::Bounds, Suite::All}) {
    if (suite_name(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

std::string_view suite_name(Suite suite) {
  switch (suite) {
    case Suite::Kernels: return "kernels";
    case Suite::Machines: return "machines";
    case Suite::Decomposition: return "decomposition";
    case Suite::Forcing: return "forcing";
    case Suite::Bounds: return "bounds";
    case Suite::All: return "all";
  }
  return "?";
}

const std::vector<CheckEntry>& all_checks() {
  static const std::vector<CheckEntry> checks = {
      {"C1", Suite::Kernels, check_kernel_oracle},
      {"C2", Suite::Kernels, check_ballot},
      {"C3", Suite::Kernels, check_influence},
      {"C4", Suite::Kernels, check_unimodality},
      {"harmonic", Suite::Kernels, check_harmonicity},
      {"binomial", Suite::Kernels, check_central_binomial},
      {"C11", Suite::Machines, check_machine_invariants},
      {"C5", Suite::Decomposition, check_decomposition},
      {"cycle", Suite::Decomposition, check_full_cycle},
      {"sphere", Suite::Decomposition, check_sphere_cap},
      {"C6", Suite::Forcing, check_forcing},
      {"C7", Suite::Forcing, check_divergence_exact},
      {"C8", Suite::Bounds, check_growth},
      {"C9", Suite::Bounds, check_convergence},
      {"C10", Suite::Bounds, check_chip_trend},
      {"summation", Suite::Bounds, check_lemma2},
      {"stirling", Suite::Bounds, check_stirling},
  };
  return checks;
}

namespace {

CheckResult timed(const CheckEntry& entry, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = entry.run(options);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) {
    r.passed = false;
    r.detail = cat("took ", r.seconds, " s, limit ", r.limit_seconds, " s");
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  for (const CheckEntry& entry : all_checks()) {
    if (suite == Suite::All || entry.suite == suite) out.push_back(timed(entry, options));
  }
  return out;
}

CheckResult run_check(std::string_view id, const VerifyOptions& options) {
  for (const CheckEntry& entry : all_checks()) {
    if (entry.id == id) return timed(entry, options);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown check '" + std::string(id) + "'");
}

}  // namespace rotortree
