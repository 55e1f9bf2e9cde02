#include "hooley/weights.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hooley/error.hpp"

using namespace hooley;

TEST(Weights, BuiltinValues) {
  const auto t = build_sieve(1000);
  EXPECT_EQ(eval(weights::unit(), factorize(360, &t)), 1.0);
  EXPECT_EQ(eval(weights::omega_power(2.0), factorize(360, &t)), 8.0);
  EXPECT_EQ(eval(weights::omega_power(0.5), factorize(1, &t)), 1.0);
  EXPECT_EQ(eval(weights::squarefree_unit(), factorize(30, &t)), 1.0);
  EXPECT_EQ(eval(weights::squarefree_unit(), factorize(12, &t)), 0.0);
  EXPECT_EQ(weights::omega_power(0.5).A, 1.0);
  EXPECT_EQ(weights::omega_power(3.0).A, 3.0);
}

TEST(Weights, ByName) {
  EXPECT_EQ(weights::by_name("unit").name, "unit");
  EXPECT_EQ(weights::by_name("omega_power", 0.25).y, 0.25);
  EXPECT_THROW(weights::by_name("nope"), ConfigError);
}

TEST(Weights, Multiplicative) {
  const auto t = build_sieve(1'000'000);
  for (const auto& w : {weights::unit(), weights::omega_power(0.7), weights::squarefree_unit()}) {
    for (std::uint64_t m = 1; m <= 1000; m += 7) {
      for (std::uint64_t n = 1; n <= 1000; n += 11) {
        if (std::gcd(m, n) != 1) continue;
        ASSERT_DOUBLE_EQ(eval(w, factorize(m * n, &t)),
                         eval(w, factorize(m, &t)) * eval(w, factorize(n, &t)));
      }
    }
  }
}

TEST(Weights, ClassViolation) {
  WeightSpec w = weights::unit();
  w.name = "too_big";
  w.value_at_prime_power = [](std::uint64_t, unsigned nu) { return nu == 2 ? 5.0 : 1.0; };
  EXPECT_EQ(eval(w, factorize(6)), 1.0);
  EXPECT_THROW(eval(w, factorize(12)), ClassViolation);
  w.value_at_prime_power = [](std::uint64_t, unsigned) { return -1.0; };
  EXPECT_THROW(eval(w, factorize(2)), ClassViolation);
}

TEST(Li, AgainstExpint) {
  for (double x : {1.5, 2.0, std::numbers::e, 10.0, 1e3, 1e6, 1e10}) {
    const double ref = boost::math::expint(std::log(x));
    EXPECT_NEAR(logarithmic_integral(x), ref, 1e-12 * std::abs(ref)) << x;
  }
  EXPECT_NEAR(logarithmic_integral(std::numbers::e), 1.8951178163559368, 1e-13);
  EXPECT_NEAR(logarithmic_integral(1e6), 78627.54915946218, 1e-8);
}

TEST(Li, StableUnderTolerance) {
  for (double x : {3.0, 1e4, 1e8}) {
    const double a = logarithmic_integral(x, 1e-13);
    const double b = logarithmic_integral(x, 1e-10);
    EXPECT_NEAR(a, b, 1e-9 * a);
  }
  EXPECT_THROW(logarithmic_integral(1.0), ConfigError);
}

TEST(PrimeSums, Values) {
  const auto r = prime_sum_residual(weights::unit(), 1'000'000);
  EXPECT_EQ(r.sum, 78498.0);
  EXPECT_NEAR(r.y_li_x, 78627.54915946218, 1e-6);
  EXPECT_NEAR(r.residual, 78498.0 - 78627.54915946218, 1e-6);
  const auto half = prime_sum_residual(weights::omega_power(0.5), 1'000'000);
  EXPECT_EQ(half.sum, 0.5 * 78498.0);
  EXPECT_EQ(prime_sum_residual(weights::unit(), 100).sum, 25.0);
}

TEST(Shiu, Ratios) {
  EXPECT_DOUBLE_EQ(shiu_ratio(weights::unit(), 100), 1.0);
  const double sf = shiu_ratio(weights::squarefree_unit(), 10'000);
  EXPECT_DOUBLE_EQ(sf, 6083.0 / 10'000.0);
  EXPECT_NEAR(sf, 6.0 / (std::numbers::pi * std::numbers::pi), 0.01);
}
