#pragma once

// Exact evaluation of the window count Delta(n,u), the Delta-function, and the
// moment apparatus built on it: M_q, L, M*_l, N_{j,q}, W_q and tau(n, theta).
//
// Every quantity works in log space. Delta(n,u) counts divisors d with
// e^u < d <= e^{u+1}, so each divisor contributes the half-open unit interval
// u in [log d - 1, log d). The function u -> Delta(n,u) is therefore a step
// function with breakpoints {log d - 1, log d}.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hooley/arith.hpp"

namespace hooley {

/// Width of the band around |log d' - log d| = 1 inside which window
/// membership is decided in extended precision instead of double.
inline constexpr double kWindowGuard = 1e-9;

/// Breakpoints closer than this are merged into one.
inline constexpr double kBreakpointMergeTol = 1e-12;

/// Default budget of tuple evaluations for the brute-force tuple routines.
inline constexpr double kDefaultOracleCap = 1e8;

/// Exact test of hi < e * lo for positive integers (e * lo is never an integer).
bool below_e_times(std::uint64_t hi, std::uint64_t lo);

/// The ascending divisors of n together with their natural logarithms.
class LogDivisorProfile {
 public:
  /// Profile of n = 1.
  LogDivisorProfile();
  explicit LogDivisorProfile(std::span<const std::uint64_t> ascending_divisors);

  static LogDivisorProfile of(std::uint64_t n, const SieveTable* table = nullptr);

  /// Reuses the buffers; divisors must be strictly increasing and start at 1.
  void assign(std::span<const std::uint64_t> ascending_divisors);

  std::uint64_t n() const { return divisors_.back(); }
  std::size_t tau() const { return divisors_.size(); }
  std::span<const std::uint64_t> divisors() const { return divisors_; }
  std::span<const double> logs() const { return logs_; }

  /// True iff divisors[hi] < e * divisors[lo] (requires lo <= hi).
  bool window_holds(std::size_t lo, std::size_t hi) const;

 private:
  std::vector<std::uint64_t> divisors_;
  std::vector<double> logs_;
};

/// Piecewise-constant, compactly supported function with nonnegative integer
/// values. values[i] holds on [breakpoints[i], breakpoints[i+1]); the function
/// vanishes outside [breakpoints.front(), breakpoints.back()).
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::vector<double> breakpoints, std::vector<std::uint32_t> values);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const std::uint32_t> values() const { return values_; }
  std::size_t intervals() const { return values_.size(); }

  std::uint32_t value_at(double u) const;
  std::uint32_t max_value() const;

  /// Integral of f^q. Throws CapacityError if max_value^q overflows double.
  double power_integral(unsigned q) const;
  double integral() const { return power_integral(1); }

  /// Measure of {u : f(u) > 0}.
  double support_measure() const;

  /// u -> f(u - by).
  StepFunction shifted(double by) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<std::uint32_t> values_;
};

/// Integral of f^a * g^b over the merged breakpoint set.
double product_integral(const StepFunction& f, unsigned a, const StepFunction& g, unsigned b);

StepFunction profile(const LogDivisorProfile& p);

/// Delta(n) = max_d #{d' | n : d <= d' < e d}, via a two-pointer sweep.
std::uint32_t delta_max(const LogDivisorProfile& p);

enum class MomentMethod { breakpoint, tuple_oracle };

struct MomentReport {
  unsigned q;
  double value;
  MomentMethod method;
};

/// M_q(n) = integral of Delta(n,u)^q du, by exact breakpoint integration.
MomentReport moment(const LogDivisorProfile& p, unsigned q);

/// M_q(n) as the sum over q-tuples of divisors of (1 - log(max/min))^+.
/// Throws CapacityError when tau^q exceeds `cap`.
MomentReport moment_oracle(const LogDivisorProfile& p, unsigned q,
                           double cap = kDefaultOracleCap);

/// L(n) = meas{u : Delta(n,u) > 0}.
double support_measure(const LogDivisorProfile& p);

/// Number of l-tuples of divisors with max <= e * min.
std::uint64_t mstar(const LogDivisorProfile& p, unsigned l, double cap = kDefaultOracleCap);

/// N_{j,q}(n,p) = integral of Delta(n,u)^j Delta(n,u - log p)^{q-j} du.
double n_jq(const LogDivisorProfile& p, std::uint64_t prime, unsigned j, unsigned q);

/// W_q(n,p) = sum_{1<=j<=q-1} binom(q,j) N_{j,q}(n,p).
double w_q(const LogDivisorProfile& p, std::uint64_t prime, unsigned q);

/// tau(n, theta) = sum_{d | n} d^{i theta}.
std::complex<double> tau_theta(const LogDivisorProfile& p, double theta);

/// Reusable buffers for evaluating Delta(n) over many n.
class DeltaWorkspace {
 public:
  std::uint32_t delta(const Factorization& f);
  const LogDivisorProfile& profile() const { return profile_; }

 private:
  std::vector<std::uint64_t> divisors_;
  LogDivisorProfile profile_;
};

double binomial(unsigned n, unsigned k);

}  // namespace hooley
