#include "hooley/delta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "hooley/error.hpp"
#include "hooley/summation.hpp"

namespace hooley {

namespace {

// floor(e * 10^59)
const boost::multiprecision::cpp_int& e_scaled() {
  static const boost::multiprecision::cpp_int value(
      "271828182845904523536028747135266249775724709369995957496696");
  return value;
}

const boost::multiprecision::cpp_int& e_scale() {
  static const boost::multiprecision::cpp_int value =
      boost::multiprecision::pow(boost::multiprecision::cpp_int(10), 59);
  return value;
}

bool is_prime_trial(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d <= p / d; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

bool below_e_times(std::uint64_t hi, std::uint64_t lo) {
  using boost::multiprecision::cpp_int;
  // E <= e*10^59 < E + 1, so E*lo <= e*lo*10^59 < (E+1)*lo.
  const cpp_int lhs = cpp_int(hi) * e_scale();
  const cpp_int lower = e_scaled() * lo;
  if (lhs < lower) return true;
  if (lhs >= lower + lo) return false;
  // |hi - e*lo| < lo * 1e-59 does not happen for 64-bit operands.
  return static_cast<double>(hi) < std::exp(1.0) * static_cast<double>(lo);
}

LogDivisorProfile::LogDivisorProfile() : divisors_{1}, logs_{0.0} {}

LogDivisorProfile::LogDivisorProfile(std::span<const std::uint64_t> ascending_divisors) {
  assign(ascending_divisors);
}

void LogDivisorProfile::assign(std::span<const std::uint64_t> ascending_divisors) {
  if (ascending_divisors.empty() || ascending_divisors.front() != 1) {
    throw ConfigError("divisor list must be nonempty and start at 1");
  }
  divisors_.assign(ascending_divisors.begin(), ascending_divisors.end());
  logs_.resize(divisors_.size());
  logs_[0] = 0.0;
  for (std::size_t i = 1; i < divisors_.size(); ++i) {
    if (divisors_[i] <= divisors_[i - 1]) {
      throw ConfigError("divisor list must be strictly increasing");
    }
    logs_[i] = std::log(static_cast<double>(divisors_[i]));
  }
}

LogDivisorProfile LogDivisorProfile::of(std::uint64_t n, const SieveTable* table) {
  if (n == 0) throw ConfigError("n must be positive");
  return LogDivisorProfile(hooley::divisors(factorize(n, table)));
}

bool LogDivisorProfile::window_holds(std::size_t lo, std::size_t hi) const {
  const double gap = logs_[hi] - logs_[lo];
  if (gap < 1.0 - kWindowGuard) return true;
  if (gap > 1.0 + kWindowGuard) return false;
  return below_e_times(divisors_[hi], divisors_[lo]);
}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<std::uint32_t> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() ? !values_.empty() : values_.size() + 1 != breakpoints_.size()) {
    throw ConfigError("step function needs one value per interval");
  }
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end())) {
    throw ConfigError("step function breakpoints must be ascending");
  }
}

std::uint32_t StepFunction::value_at(double u) const {
  if (breakpoints_.empty() || u < breakpoints_.front() || u >= breakpoints_.back()) return 0;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), u);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

std::uint32_t StepFunction::max_value() const {
  return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

double StepFunction::power_integral(unsigned q) const {
  const std::uint32_t top = max_value();
  std::vector<double> powers(top + 1);
  for (std::uint32_t v = 0; v <= top; ++v) powers[v] = std::pow(static_cast<double>(v), q);
  if (!std::isfinite(powers[top])) {
    throw CapacityError("Delta value " + std::to_string(top) + " raised to q=" +
                        std::to_string(q) + " overflows double");
  }
  detail::NeumaierSum sum;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == 0) continue;
    sum.add((breakpoints_[i + 1] - breakpoints_[i]) * powers[values_[i]]);
  }
  return sum.value();
}

double StepFunction::support_measure() const {
  detail::NeumaierSum sum;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > 0) sum.add(breakpoints_[i + 1] - breakpoints_[i]);
  }
  return sum.value();
}

StepFunction StepFunction::shifted(double by) const {
  std::vector<double> bps(breakpoints_);
  for (double& b : bps) b += by;
  return StepFunction(std::move(bps), values_);
}

double product_integral(const StepFunction& f, unsigned a, const StepFunction& g, unsigned b) {
  const auto fb = f.breakpoints();
  const auto gb = g.breakpoints();
  if (fb.empty() || gb.empty()) return 0.0;
  const double lo = std::max(fb.front(), gb.front());
  const double hi = std::min(fb.back(), gb.back());
  if (!(lo < hi)) return 0.0;

  const auto fv = f.values();
  const auto gv = g.values();
  // Index of the interval containing lo in each function.
  std::size_t i = static_cast<std::size_t>(std::upper_bound(fb.begin(), fb.end(), lo) - fb.begin()) - 1;
  std::size_t j = static_cast<std::size_t>(std::upper_bound(gb.begin(), gb.end(), lo) - gb.begin()) - 1;

  detail::NeumaierSum sum;
  double u = lo;
  while (u < hi && i < fv.size() && j < gv.size()) {
    const double next = std::min({fb[i + 1], gb[j + 1], hi});
    if (fv[i] != 0 && gv[j] != 0) {
      sum.add((next - u) * std::pow(static_cast<double>(fv[i]), a) *
              std::pow(static_cast<double>(gv[j]), b));
    }
    u = next;
    if (fb[i + 1] <= u) ++i;
    if (gb[j + 1] <= u) ++j;
  }
  return sum.value();
}

StepFunction profile(const LogDivisorProfile& p) {
  const auto logs = p.logs();
  const std::size_t tau = logs.size();
  std::vector<double> bps;
  std::vector<std::uint32_t> values;
  bps.reserve(2 * tau);
  values.reserve(2 * tau);

  // Merge the sorted streams of window openings (log d - 1) and closings (log d).
  std::size_t open = 0;
  std::size_t close = 0;
  std::uint32_t count = 0;
  while (close < tau) {
    const bool take_open = open < tau && logs[open] - 1.0 <= logs[close];
    const double at = take_open ? logs[open] - 1.0 : logs[close];
    if (take_open) {
      ++count;
      ++open;
    } else {
      --count;
      ++close;
    }
    if (!bps.empty() && at - bps.back() <= kBreakpointMergeTol) {
      values.back() = count;
    } else {
      bps.push_back(at);
      values.push_back(count);
    }
  }
  values.pop_back();  // count after the last closing is 0
  return StepFunction(std::move(bps), std::move(values));
}

std::uint32_t delta_max(const LogDivisorProfile& p) {
  const std::size_t tau = p.tau();
  std::size_t best = 1;
  std::size_t j = 0;
  for (std::size_t i = 0; i < tau; ++i) {
    if (j < i + 1) j = i + 1;
    while (j < tau && p.window_holds(i, j)) ++j;
    best = std::max(best, j - i);
    if (j == tau) break;
  }
  return static_cast<std::uint32_t>(best);
}

MomentReport moment(const LogDivisorProfile& p, unsigned q) {
  if (q == 0) throw ConfigError("moment order must be >= 1");
  return {q, profile(p).power_integral(q), MomentMethod::breakpoint};
}

namespace {

struct TupleWalk {
  std::span<const double> logs;
  unsigned q;
  detail::NeumaierSum sum;

  void visit(unsigned depth, double lo, double hi) {
    if (hi - lo >= 1.0) return;  // every completion has weight 0
    if (depth == q) {
      sum.add(1.0 - (hi - lo));
      return;
    }
    for (double l : logs) visit(depth + 1, std::min(lo, l), std::max(hi, l));
  }
};

void check_tuple_budget(std::size_t tau, unsigned q, double cap) {
  const double tuples = std::pow(static_cast<double>(tau), q);
  if (tuples > cap) {
    throw CapacityError("tau^q = " + std::to_string(tuples) + " exceeds tuple cap " +
                        std::to_string(cap));
  }
}

}  // namespace

MomentReport moment_oracle(const LogDivisorProfile& p, unsigned q, double cap) {
  if (q == 0) throw ConfigError("moment order must be >= 1");
  check_tuple_budget(p.tau(), q, cap);
  TupleWalk walk{p.logs(), q, {}};
  for (double l : p.logs()) walk.visit(1, l, l);
  return {q, walk.sum.value(), MomentMethod::tuple_oracle};
}

double support_measure(const LogDivisorProfile& p) {
  const auto logs = p.logs();
  detail::NeumaierSum sum;
  sum.add(1.0);
  for (std::size_t i = 1; i < logs.size(); ++i) sum.add(std::min(1.0, logs[i] - logs[i - 1]));
  return sum.value();
}

std::uint64_t mstar(const LogDivisorProfile& p, unsigned l, double cap) {
  if (l == 0) throw ConfigError("tuple length must be >= 1");
  check_tuple_budget(p.tau(), l, cap);
  const std::size_t tau = p.tau();
  std::uint64_t total = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < tau; ++i) {
    if (j < i + 1) j = i + 1;
    while (j < tau && p.window_holds(i, j)) ++j;
    // Tuples drawn from [d_i, e d_i] whose minimum is d_i.
    const std::uint64_t c = j - i;
    total += ipow(c, l) - ipow(c - 1, l);
  }
  return total;
}

namespace {

void check_shift_prime(const LogDivisorProfile& p, std::uint64_t prime) {
  if (!is_prime_trial(prime)) {
    throw ConfigError(std::to_string(prime) + " is not prime");
  }
  if (p.n() % prime == 0) {
    throw ConfigError(std::to_string(prime) + " divides n=" + std::to_string(p.n()));
  }
}

}  // namespace

double n_jq(const LogDivisorProfile& p, std::uint64_t prime, unsigned j, unsigned q) {
  if (j < 1 || j + 1 > q) throw ConfigError("n_jq requires 1 <= j <= q-1");
  check_shift_prime(p, prime);
  const StepFunction f = profile(p);
  return product_integral(f, j, f.shifted(std::log(static_cast<double>(prime))), q - j);
}

double w_q(const LogDivisorProfile& p, std::uint64_t prime, unsigned q) {
  if (q < 2) throw ConfigError("w_q requires q >= 2");
  check_shift_prime(p, prime);
  const StepFunction f = profile(p);
  const StepFunction g = f.shifted(std::log(static_cast<double>(prime)));
  detail::NeumaierSum sum;
  for (unsigned j = 1; j < q; ++j) sum.add(binomial(q, j) * product_integral(f, j, g, q - j));
  return sum.value();
}

std::complex<double> tau_theta(const LogDivisorProfile& p, double theta) {
  std::complex<double> acc{0.0, 0.0};
  for (double l : p.logs()) acc += std::polar(1.0, theta * l);
  return acc;
}

std::uint32_t DeltaWorkspace::delta(const Factorization& f) {
  divisors_into(f, divisors_);
  profile_.assign(divisors_);
  return delta_max(profile_);
}

double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace hooley
