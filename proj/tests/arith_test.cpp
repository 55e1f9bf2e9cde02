#include "hooley/arith.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "hooley/error.hpp"
#include "oracles.hpp"

using namespace hooley;

namespace {

std::uint64_t product(const Factorization& f) {
  std::uint64_t n = 1;
  for (const auto& pp : f.factors) n *= ipow(pp.prime, pp.exponent);
  return n;
}

}  // namespace

TEST(Sieve, SmallestPrimeFactor) {
  const auto t = build_sieve(100);
  EXPECT_EQ(t.spf(9), 3u);
  EXPECT_EQ(t.spf(10), 2u);
  EXPECT_EQ(t.spf(2), 2u);
  EXPECT_EQ(t.spf(97), 97u);
  EXPECT_EQ(t.spf(91), 7u);
}

TEST(Sieve, PrimeCountMatchesTrialDivision) {
  const auto t = build_sieve(1'000'000);
  EXPECT_EQ(t.primes().size(), 78498u);
  EXPECT_EQ(t.primes().size(), oracle::prime_count_by_trial(1'000'000));
  EXPECT_EQ(primes_up_to(1'000'000).size(), 78498u);
}

TEST(Sieve, LimitOutsideRange) {
  EXPECT_THROW(build_sieve(1), CapacityError);
  EXPECT_THROW(build_sieve(1000, 999), CapacityError);
}

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).factors.empty());
  const auto f = factorize(360);
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0], (PrimePower{2, 3}));
  EXPECT_EQ(f.factors[1], (PrimePower{3, 2}));
  EXPECT_EQ(f.factors[2], (PrimePower{5, 1}));
  const auto big = factorize(9'999'999'967ull);  // prime
  ASSERT_EQ(big.factors.size(), 1u);
  EXPECT_EQ(big.factors[0].prime, 9'999'999'967ull);
  EXPECT_EQ(product(factorize(600'851'475'143ull)), 600'851'475'143ull);
}

TEST(Factorize, SieveAndTrialDivisionAgree) {
  const auto t = build_sieve(100'000);
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    const auto a = factorize(n, &t);
    const auto b = factorize(n, nullptr);
    ASSERT_EQ(a, b) << n;
    ASSERT_EQ(product(a), n);
  }
}

TEST(Factorize, SegmentsAgreeWithTable) {
  const auto base = primes_up_to(1000);
  SegmentFactorizer seg(base);
  std::vector<Factorization> out;
  seg.factor_range(900'000, 901'000, out);
  ASSERT_EQ(out.size(), 1001u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i], factorize(900'000 + i));
  }
  seg.factor_range(1, 50, out);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], factorize(1 + i));
}

TEST(Divisors, MatchTrialDivision) {
  const auto t = build_sieve(1'000'000);
  std::vector<std::uint64_t> buf;
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    const auto f = factorize(n, &t);
    divisors_into(f, buf);
    ASSERT_EQ(buf.size(), divisor_count(f)) << n;
    ASSERT_TRUE(std::is_sorted(buf.begin(), buf.end()));
    for (auto d : buf) ASSERT_EQ(n % d, 0u);
    if (n % 997 == 0) ASSERT_EQ(buf, oracle::divisors_by_trial(n));
  }
}

TEST(Divisors, CapEnforced) {
  EXPECT_THROW(divisors(factorize(720720), 10), CapacityError);
}

TEST(Classical, Examples) {
  EXPECT_EQ(classical(factorize(1)), (Classical{0, 0, 1, 1, 1, 1}));
  EXPECT_EQ(classical(factorize(12)), (Classical{2, 3, 6, 0, 3, 2}));
  EXPECT_EQ(classical(factorize(30)), (Classical{3, 3, 8, -1, 5, 2}));
  EXPECT_EQ(classical(factorize(35)), (Classical{2, 2, 4, 1, 7, 5}));
}

TEST(Classical, MobiusSumsToZero) {
  for (std::uint64_t n = 2; n <= 2000; ++n) {
    int s = 0;
    for (auto d : oracle::divisors_by_trial(n)) s += classical(factorize(d)).mu;
    ASSERT_EQ(s, 0) << n;
  }
}

TEST(Kernel, Prefixes) {
  const auto f = factorize(2 * 3 * 5 * 7 * 11);
  EXPECT_EQ(kernel_prefix(f, 0).value, 1u);
  EXPECT_EQ(kernel_prefix(f, 1).value, 2u);
  EXPECT_EQ(kernel_prefix(f, 3).value, 30u);
  EXPECT_EQ(kernel_prefix(f, 9).value, 2310u);
  EXPECT_EQ(kernel_prefix(factorize(72), 5).value, 6u);
  for (unsigned k = 0; k < 6; ++k) {
    EXPECT_LE(kernel_prefix(f, k).value, kernel_prefix(f, k + 1).value);
  }
}

TEST(OmegaBelow, Examples) {
  const auto f = factorize(2 * 3 * 5 * 7 * 11);
  EXPECT_EQ(omega_below(f, 1), 0u);
  EXPECT_EQ(omega_below(f, 2), 1u);
  EXPECT_EQ(omega_below(f, 6.5), 3u);
  EXPECT_EQ(omega_below(f, 1e9), 5u);
}

TEST(InAx, Examples) {
  // First twelve primes: the fifth one (11) has log log 11 < 1.
  std::uint64_t primorial = 1;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) primorial *= p;
  EXPECT_FALSE(in_A_x(factorize(primorial), 5, 12));
  EXPECT_FALSE(in_A_x(factorize(12), 1, 3));  // not squarefree
  EXPECT_TRUE(in_A_x(factorize(1), 1, 3));
  // log log 3 = 0.094 < 1/5 fails at k = 1, log log 5 = 0.476 > 1/5 passes.
  EXPECT_FALSE(in_A_x(factorize(3), 1, 3));
  EXPECT_TRUE(in_A_x(factorize(5), 1, 3));
  // k = 2 needs log log p_2 > 0.4: 5 * 7 has log log 7 = 0.666.
  EXPECT_TRUE(in_A_x(factorize(35), 1, 3));
  // Conditions below xi are not checked.
  EXPECT_TRUE(in_A_x(factorize(3 * 7), 2, 3));
  EXPECT_THROW(in_A_x(factorize(5), 4, 3), ConfigError);
}

TEST(Ipow, Values) {
  EXPECT_EQ(ipow(3, 0), 1u);
  EXPECT_EQ(ipow(2, 40), 1ull << 40);
  EXPECT_EQ(ipow(10, 9), 1'000'000'000u);
}
