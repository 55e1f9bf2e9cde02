#pragma once

// Nonnegative multiplicative weights g, given by their values on prime powers,
// with the class parameters y (mean value on primes) and A (g(p^nu) <= A^nu).

#include <cstdint>
#include <functional>
#include <string>

#include "hooley/arith.hpp"

namespace hooley {

struct WeightSpec {
  std::string name;
  double y = 1.0;
  double A = 1.0;
  // Decay metadata of the prime mean-value condition; never evaluated.
  double c = 1.0;
  double eta = 0.5;
  std::function<double(std::uint64_t prime, unsigned nu)> value_at_prime_power;
};

namespace weights {

/// g = 1.
WeightSpec unit();
/// g(n) = y^omega(n), i.e. g(p^nu) = y.
WeightSpec omega_power(double y);
/// g = mu^2.
WeightSpec squarefree_unit();

/// Looks up a built-in by name ("unit", "omega_power", "squarefree_unit");
/// `y` is used by omega_power only. Throws ConfigError for unknown names.
WeightSpec by_name(const std::string& name, double y = 1.0);

}  // namespace weights

/// Product of g(p^nu) over the factorization. Throws ClassViolation if some
/// g(p^nu) exceeds A^nu.
double eval(const WeightSpec& w, const Factorization& f);

/// Principal-value logarithmic integral li(x), x > 1, evaluated as Ei(log x)
/// with adaptive Gauss-Kronrod quadrature at relative tolerance `tol`.
double logarithmic_integral(double x, double tol = 1e-13);

struct PrimeSumResidual {
  double sum;
  double y_li_x;
  double residual;
};

/// sum_{p <= x} g(p) against y li(x). Builds a sieve when `table` is null or
/// too short.
PrimeSumResidual prime_sum_residual(const WeightSpec& w, std::uint64_t x,
                                    const SieveTable* table = nullptr);

/// (sum_{n <= x} g(n)) / (x (log x)^{y-1}).
double shiu_ratio(const WeightSpec& w, std::uint64_t x, const SieveTable* table = nullptr);

}  // namespace hooley
