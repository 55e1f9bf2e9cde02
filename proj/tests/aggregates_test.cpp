#include "hooley/aggregates.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "hooley/delta.hpp"
#include "hooley/error.hpp"
#include "oracles.hpp"

using namespace hooley;

namespace {

ScanConfig config_for(std::uint64_t x, WeightSpec w = weights::unit()) {
  ScanConfig c;
  c.x = x;
  c.weight = std::move(w);
  c.workers = 1;
  return c;
}

bool squarefree_by_trial(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

}  // namespace

TEST(Scan, GoldenValues) {
  const auto r10 = scan(config_for(10));
  EXPECT_EQ(r10.S, 15.0);
  EXPECT_EQ(r10.delta_histogram, (std::map<std::uint32_t, std::uint64_t>{{1, 5}, {2, 5}}));
  EXPECT_EQ(scan(config_for(2)).S, 3.0);

  std::uint64_t s10 = 0;
  for (std::uint64_t n = 1; n <= 10; ++n) s10 += oracle::delta_by_windows(n);
  EXPECT_EQ(s10, 15u);
}

TEST(Scan, MatchesOracleSum) {
  const std::uint64_t x = 5000;
  const auto r = scan(config_for(x, weights::omega_power(0.5)));
  long double S = 0, D = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    const auto f = factorize(n);
    const long double g = std::pow(0.5L, static_cast<long double>(f.factors.size()));
    const auto delta = oracle::delta_by_windows(n);
    S += g * delta;
    if (squarefree_by_trial(n)) D += g * delta / n;
  }
  EXPECT_NEAR(r.S, static_cast<double>(S), 1e-9 * static_cast<double>(S));
  EXPECT_NEAR(r.D, static_cast<double>(D), 1e-9 * static_cast<double>(D));
}

TEST(Scan, SquarefreeHarmonicSum) {
  const auto r = scan(config_for(10, weights::squarefree_unit()));
  // Squarefree n <= 10 with their Delta values.
  const double expect = 1.0 + 2.0 / 2 + 1.0 / 3 + 1.0 / 5 + 2.0 / 6 + 1.0 / 7 + 2.0 / 10;
  EXPECT_NEAR(r.D, expect, 1e-15);
  EXPECT_EQ(r.S, 1 + 2 + 1 + 1 + 2 + 1 + 2);
}

TEST(Scan, DeterministicAcrossSegmentsAndWorkers) {
  ScanConfig base = config_for(200'000, weights::omega_power(0.37));
  base.checkpoints = {1000, 54321, 100'000};
  base.gammas = kDefaultGammas;
  base.segment_size = 100'000;
  const auto ref = scan(base);
  for (std::uint64_t seg : {1000ull, 7777ull, 100'000ull}) {
    for (unsigned workers : {1u, 2u, 5u}) {
      ScanConfig c = base;
      c.segment_size = seg;
      c.workers = workers;
      EXPECT_TRUE(scan(c) == ref) << seg << " " << workers;
    }
  }
}

TEST(Scan, Checkpoints) {
  ScanConfig c = config_for(1000);
  c.checkpoints = {10, 2, 1000};
  const auto r = scan(c);
  ASSERT_EQ(r.checkpoints.size(), 3u);
  EXPECT_EQ(r.checkpoints[0].x, 2u);
  EXPECT_EQ(r.checkpoints[0].S, 3.0);
  EXPECT_EQ(r.checkpoints[1].S, 15.0);
  EXPECT_EQ(r.checkpoints[2].S, r.S);
  c.checkpoints = {2000};
  EXPECT_THROW(scan(c), ConfigError);
}

TEST(Scan, RangeErrors) {
  EXPECT_THROW(scan(config_for(1)), ConfigError);
  ScanConfig c = config_for(100);
  c.max_x = 50;
  EXPECT_THROW(scan(c), CapacityError);
}

TEST(Scan, DminusBelowD) {
  for (std::uint64_t x : {100ull, 10'000ull, 300'000ull}) {
    const auto r = scan(config_for(x, weights::squarefree_unit()));
    EXPECT_LE(r.D_minus, r.D);
    EXPECT_GE(r.D_minus, 0.0);
  }
}

TEST(Scan, QuantilesAndDefaults) {
  const auto r = scan(config_for(100'000));
  ASSERT_EQ(r.quantiles.size(), 5u);
  for (std::size_t i = 1; i < r.quantiles.size(); ++i) {
    EXPECT_LE(r.quantiles[i - 1].value, r.quantiles[i].value);
  }
  EXPECT_EQ(r.quantiles.back().value, r.delta_histogram.rbegin()->first);
  EXPECT_EQ(r.xi, 1u);
  // loglog 1e5 = 2.4435, (2.1)(2.4435) = 5.13.
  EXPECT_EQ(r.k_cap, 6u);
  EXPECT_EQ(r.q_of_k_cap, 5u);
}

TEST(Scan, CutoffHelpers) {
  EXPECT_EQ(q_of_k(1), 2u);
  EXPECT_EQ(q_of_k(4), 4u);
  EXPECT_EQ(q_of_k(5), 5u);
  EXPECT_EQ(k_cap_of(config_for(2)), 0u);
  EXPECT_EQ(xi_of(config_for(10)), 1u);
  ScanConfig c = config_for(10);
  c.xi = 3;
  EXPECT_EQ(xi_of(c), 3u);
}

TEST(BoundRatios, Rows) {
  const auto unit = bound_ratios(100.0, 1000.0, 1.0, kDefaultEnvelopeConstant);
  ASSERT_EQ(unit.count("sqrt_loglog"), 1u);
  EXPECT_EQ(unit.count("y_below_one"), 0u);
  const double env = 1000.0 * std::exp(0.9803 * std::sqrt(std::log(std::log(1000.0))));
  EXPECT_NEAR(unit.at("sqrt_loglog"), 100.0 / env, 1e-15);

  const auto half = bound_ratios(1.0, 1e6, 0.5, 1.0);
  EXPECT_EQ(half.count("y_at_most_half"), 1u);
  EXPECT_EQ(half.count("y_below_one"), 1u);
  EXPECT_EQ(bound_ratios(1.0, 1e6, 2.0, 1.0).count("y_at_least_high"), 1u);
  // Small x: loglog x < 0, the y <= 1/2 envelope is negative and dropped.
  EXPECT_EQ(bound_ratios(1.0, 2.0, 0.5, 1.0).count("y_at_most_half"), 0u);
}

TEST(BoundRatios, CurveMatchesScan) {
  ScanConfig c = config_for(50'000);
  const std::vector<std::uint64_t> cps = {1000, 10'000, 50'000};
  const auto rows = bound_ratio_curve(c, cps);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2].S, scan(c).S);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].S, rows[i - 1].S);
}

TEST(TruncatedHarmonic, MonotoneAndConverges) {
  ScanConfig c = config_for(30'000, weights::squarefree_unit());
  double prev = 0.0;
  for (unsigned k = 1; k <= 8; ++k) {
    const double d = truncated_harmonic(c, k);
    EXPECT_GE(d, prev - 1e-15);
    prev = d;
  }
  // No squarefree n <= 30000 has more than 6 primes.
  EXPECT_EQ(truncated_harmonic(c, 7), scan(c).D);
  EXPECT_THROW(truncated_harmonic(c, 0), ConfigError);
}

TEST(OmegaTail, Examples) {
  EXPECT_EQ(omega_tail_mass(config_for(100), 1.0).tail, 0.0);
  // Threshold 2 loglog 10 = 1.67: only 6 and 10 have two prime factors.
  EXPECT_EQ(omega_tail_mass(config_for(10), 1.0).tail, 4.0);
  // Threshold is negative at x = 2, so n = 2 counts with Delta(2) = 2.
  EXPECT_EQ(omega_tail_mass(config_for(2), 1.0).tail, 2.0);
  EXPECT_THROW(omega_tail_mass(config_for(10), 0.5), ConfigError);
}

TEST(NormalOrder, Report) {
  ScanConfig c = config_for(16);
  const std::vector<double> gammas = {0.5, 100.0};
  const auto rows = normal_order_report(c, gammas);
  ASSERT_EQ(rows.size(), 2u);
  // Delta(16) = 2 > (loglog 16)^0.5.
  EXPECT_EQ(rows[0].exceed, 1u);
  EXPECT_EQ(rows[0].total, 1u);
  EXPECT_EQ(rows[1].fraction, 0.0);
  EXPECT_THROW(normal_order_report(config_for(15), gammas), ConfigError);

  ScanConfig big = config_for(100'000);
  const auto r = normal_order_report(big, kDefaultGammas);
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_LE(r[i].fraction, r[i - 1].fraction);
  big.gammas = kDefaultGammas;
  EXPECT_EQ(scan(big).normal_order, r);
}

TEST(Induction, ParameterGate) {
  EXPECT_NO_THROW(validate_induction_params({1.1, 0.99, 1.3}));
  EXPECT_THROW(validate_induction_params({1.5, 0.65, 1.01}), ConfigError);
  EXPECT_THROW(validate_induction_params({1.1, 0.99, 0.9}), ConfigError);
  EXPECT_THROW(validate_induction_params({2.5, 0.99, 1.3}), ConfigError);
  InductionParams p;
  p.r = 4.0;  // needs r > 1/alpha = 5
  EXPECT_THROW(validate_induction_params(p), ConfigError);
  const std::vector<std::uint64_t> sample = {30};
  EXPECT_THROW(ppx_induction_check(config_for(1000), {1.5, 0.65, 1.01}, sample), ConfigError);
}

TEST(Induction, Constants) {
  const InductionParams p;
  const auto c = induction_constants(p, p.gamma);
  EXPECT_NEAR(c.b, std::pow(2.0, 1 - 1.3 + 1.3 / 1.1) * std::exp(0.2 / 1.1 - 0.99), 1e-15);
  EXPECT_NEAR(c.g, std::pow(2.0, 1.3 / 1.1) * std::exp(0.2 / 1.1 - 0.99), 1e-15);
}

TEST(Induction, TopIndexAndKernel) {
  EXPECT_EQ(induction_top_index(factorize(30), 1e10, 1), 3u);
  const auto f = factorize(2 * 3 * 5 * 7 * 10007);
  // 10007 is above e^{e^{loglog 1e10 - 1}} = 4780.
  EXPECT_EQ(induction_top_index(f, 1e10, 1), 4u);
  EXPECT_EQ(induction_kernel(f, 3, 4, 1), 15u);
  EXPECT_EQ(induction_kernel(f, 9, 4, 1), 105u);
  EXPECT_EQ(induction_kernel(f, 1, 4, 1), 1u);
}

TEST(Induction, PpxReportShape) {
  ScanConfig c = config_for(1'000'000);
  const auto sample = seeded_squarefree_sample(300, 2, 1'000'000, 7, 3);
  ASSERT_EQ(sample.size(), 300u);
  const auto r = ppx_induction_check(c, {}, sample);
  EXPECT_EQ(r.sampled, 300u);
  for (const auto& row : r.rows) {
    EXPECT_GT(row.k, r.xi);
    EXPECT_LE(row.delta_bound_fraction, 0.5);
    EXPECT_GE(row.samples, row.recursion_checked);
  }
  const std::vector<std::uint64_t> bad = {12};
  EXPECT_THROW(ppx_induction_check(c, {}, bad), ConfigError);
}

TEST(TailTransfer, Holds) {
  ScanConfig c = config_for(10'000'000);
  const auto sample = seeded_sample(2000, 1, 10'000'000, 3);
  const auto r = tail_transfer_check(c, sample);
  EXPECT_EQ(r.rows.size(), 2000u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_LE(r.max_ratio, 1.0);

  const std::vector<std::uint64_t> edge = {1, 1024};
  const auto e = tail_transfer_check(c, edge);
  EXPECT_EQ(e.rows[0].kernel, 1u);
  EXPECT_EQ(e.rows[0].delta_n, 1u);
  // 2^10 with xi = 1: the kernel skips the only prime, all ten factors go to the tail.
  EXPECT_EQ(e.rows[1].kernel, 1u);
  EXPECT_EQ(e.rows[1].omega_rest, 10u);
  EXPECT_TRUE(e.rows[1].holds);
}

TEST(Samples, Seeded) {
  EXPECT_EQ(seeded_sample(50, 1, 1000, 9), seeded_sample(50, 1, 1000, 9));
  EXPECT_NE(seeded_sample(50, 1, 1000, 9), seeded_sample(50, 1, 1000, 10));
  for (auto n : seeded_squarefree_sample(100, 1, 100'000, 1, 2)) {
    EXPECT_TRUE(squarefree_by_trial(n));
    EXPECT_GE(factorize(n).factors.size(), 2u);
  }
  EXPECT_THROW(seeded_sample(1, 0, 10, 1), ConfigError);
}

TEST(NormalOrder, DefaultExponents) {
  const double l2 = std::log(2.0);
  ASSERT_EQ(kDefaultGammas.size(), 3u);
  EXPECT_NEAR(kDefaultGammas[1], l2 / (l2 + 1 / l2 - 1), 1e-7);
  EXPECT_NEAR(kDefaultGammas[2], l2, 1e-6);
  EXPECT_GT(kDefaultEnvelopeConstant, std::sqrt(2.0) * l2);
}

TEST(TruncatedHarmonic, SmallRanges) {
  ScanConfig c = config_for(2);
  // n = 1 contributes Delta(1)/1, n = 2 contributes Delta(2)/2.
  EXPECT_EQ(truncated_harmonic(c, 1), 2.0);
  c.x = 30;
  double expect = 0.0;
  for (std::uint64_t n = 1; n <= 30; ++n) {
    if (!squarefree_by_trial(n)) continue;
    const auto f = factorize(n);
    const std::uint64_t p1 = f.factors.empty() ? 1 : f.factors[0].prime;
    expect += static_cast<double>(oracle::delta_by_windows(p1)) / n;
  }
  EXPECT_NEAR(truncated_harmonic(c, 1), expect, 1e-15);
}

TEST(BoundRatios, UnitAtTen) {
  const auto r = scan(config_for(10));
  const double env = 10.0 * std::exp(0.9803 * std::sqrt(std::log(std::log(10.0))));
  EXPECT_NEAR(r.bound_ratios.at("sqrt_loglog"), 15.0 / env, 1e-15);
}
