#include "hooley/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hooley/error.hpp"
#include "hooley/summation.hpp"

namespace hooley {

namespace weights {

WeightSpec unit() {
  return {"unit", 1.0, 1.0, 1.0, 0.5, [](std::uint64_t, unsigned) { return 1.0; }};
}

WeightSpec omega_power(double y) {
  if (!(y >= 0.0)) throw ConfigError("omega_power requires y >= 0");
  return {"omega_power", y, std::max(y, 1.0), 1.0, 0.5,
          [y](std::uint64_t, unsigned) { return y; }};
}

WeightSpec squarefree_unit() {
  return {"squarefree_unit", 1.0, 1.0, 1.0, 0.5,
          [](std::uint64_t, unsigned nu) { return nu == 1 ? 1.0 : 0.0; }};
}

WeightSpec by_name(const std::string& name, double y) {
  if (name == "unit") return unit();
  if (name == "omega_power") return omega_power(y);
  if (name == "squarefree_unit") return squarefree_unit();
  throw ConfigError("unknown weight '" + name +
                    "' (expected unit, omega_power, squarefree_unit)");
}

}  // namespace weights

double eval(const WeightSpec& w, const Factorization& f) {
  double g = 1.0;
  for (const auto& pp : f.factors) {
    const double v = w.value_at_prime_power(pp.prime, pp.exponent);
    if (v < 0.0 || v > std::pow(w.A, pp.exponent)) {
      throw ClassViolation("weight " + w.name + " gives g(" + std::to_string(pp.prime) + "^" +
                           std::to_string(pp.exponent) + ") = " + std::to_string(v) +
                           " outside [0, A^nu]");
    }
    g *= v;
  }
  return g;
}

double logarithmic_integral(double x, double tol) {
  if (!(x > 1.0)) throw ConfigError("li(x) is evaluated for x > 1 only");
  // Ei(t) = gamma + log t + int_0^t (e^s - 1)/s ds; the integrand is smooth.
  const double t = std::log(x);
  auto integrand = [](double s) { return s == 0.0 ? 1.0 : std::expm1(s) / s; };
  const double tail = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, t, 30, tol);
  return std::numbers::egamma + std::log(t) + tail;
}

namespace {

const SieveTable& sieve_for(std::uint64_t x, const SieveTable* table,
                            std::optional<SieveTable>& owned) {
  if (table != nullptr && table->limit() >= x) return *table;
  owned.emplace(std::max<std::uint64_t>(x, 2));
  return *owned;
}

}  // namespace

PrimeSumResidual prime_sum_residual(const WeightSpec& w, std::uint64_t x,
                                    const SieveTable* table) {
  if (x < 2) throw ConfigError("prime_sum_residual requires x >= 2");
  std::optional<SieveTable> owned;
  const SieveTable& sieve = sieve_for(x, table, owned);
  detail::NeumaierSum sum;
  for (std::uint32_t p : sieve.primes()) {
    if (p > x) break;
    sum.add(eval(w, Factorization{p, {{p, 1}}}));
  }
  PrimeSumResidual r{};
  r.sum = sum.value();
  r.y_li_x = w.y * logarithmic_integral(static_cast<double>(x));
  r.residual = r.sum - r.y_li_x;
  return r;
}

double shiu_ratio(const WeightSpec& w, std::uint64_t x, const SieveTable* table) {
  if (x < 2) throw ConfigError("shiu_ratio requires x >= 2");
  std::optional<SieveTable> owned;
  const SieveTable& sieve = sieve_for(x, table, owned);
  detail::NeumaierSum sum;
  Factorization f;
  for (std::uint64_t n = 1; n <= x; ++n) {
    factorize_into(n, &sieve, f);
    sum.add(eval(w, f));
  }
  const double xd = static_cast<double>(x);
  return sum.value() / (xd * std::pow(std::log(xd), w.y - 1.0));
}

}  // namespace hooley
