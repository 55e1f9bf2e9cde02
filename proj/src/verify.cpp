#include "hooley/verify.hpp"

#include <cmath>
#include <sstream>

#include "hooley/aggregates.hpp"
#include "hooley/arith.hpp"
#include "hooley/delta.hpp"
#include "hooley/error.hpp"
#include "hooley/waring.hpp"

namespace hooley::verify {

namespace {

constexpr std::size_t kKeptFailures = 50;

bool le_slack(double lhs, double rhs) { return lhs <= rhs + kRoundingSlack * std::abs(rhs); }

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::string describe(const char* what, std::uint64_t n, double lhs, double rhs,
                     int q = -1) {
  std::ostringstream os;
  os.precision(17);
  os << what << " n=" << n;
  if (q >= 0) os << " q=" << q;
  os << " lhs=" << lhs << " rhs=" << rhs;
  return os.str();
}

Result start(const char* name, std::uint64_t max) {
  Result r;
  r.suite = name;
  r.max = max;
  return r;
}

}  // namespace

void Result::fail(std::string what) {
  ++failure_count;
  if (failures.size() < kKeptFailures) failures.push_back(std::move(what));
}

Result subadditivity(std::uint64_t max) {
  Result r = start("subadditivity", max);
  const SieveTable sieve(std::max<std::uint64_t>(max * max, 2));
  std::vector<std::uint32_t> delta(max * max + 1, 0);
  for (std::uint64_t n = 1; n <= max * max; ++n) {
    delta[n] = delta_max(LogDivisorProfile(divisors(factorize(n, &sieve))));
  }
  for (std::uint64_t m = 1; m <= max; ++m) {
    const std::uint64_t tau_m = divisor_count(factorize(m, &sieve));
    for (std::uint64_t n = 1; n <= max; ++n) {
      ++r.checks;
      if (delta[m * n] > tau_m * delta[n]) {
        r.fail("Delta(mn) > tau(m) Delta(n) at m=" + std::to_string(m) +
               " n=" + std::to_string(n));
      }
    }
  }
  return r;
}

Result moment_oracle(std::uint64_t max) {
  Result r = start("moment-oracle", max);
  for (std::uint64_t n = 1; n <= max; ++n) {
    const auto p = LogDivisorProfile::of(n);
    for (unsigned q = 1; q <= 4; ++q) {
      ++r.checks;
      const double fast = moment(p, q).value;
      const double slow = moment_oracle(p, q).value;
      if (!rel_close(fast, slow, kRouteAgreement)) r.fail(describe("moment vs oracle", n, fast, slow, q));
    }
  }
  return r;
}

Result identities(std::uint64_t max) {
  Result r = start("identities", max);
  const SieveTable sieve(std::max<std::uint64_t>(max, 2));
  for (std::uint64_t n = 1; n <= max; ++n) {
    const LogDivisorProfile p(divisors(factorize(n, &sieve)));
    const auto tau = static_cast<double>(p.tau());
    const StepFunction sf = profile(p);
    r.checks += 2;
    const double m1 = moment(p, 1).value;
    if (std::abs(m1 - tau) > 1e-12 * tau) r.fail(describe("M_1 != tau", n, m1, tau));
    const double integral = sf.integral();
    if (std::abs(integral - tau) > 1e-12 * tau) r.fail(describe("integral != tau", n, integral, tau));
  }
  const LogDivisorProfile one;
  for (unsigned q = 1; q <= 10; ++q) {
    ++r.checks;
    const double m = moment(one, q).value;
    if (m != 1.0) r.fail(describe("M_q(1) != 1", 1, m, 1.0, static_cast<int>(q)));
  }
  return r;
}

Result concentration(std::uint64_t max) {
  Result r = start("concentration", max);
  const SieveTable sieve(std::max<std::uint64_t>(max, 2));
  for (std::uint64_t n = 1; n <= max; ++n) {
    const LogDivisorProfile p(divisors(factorize(n, &sieve)));
    const StepFunction sf = profile(p);
    const double delta = delta_max(p);
    for (unsigned q = 1; q <= 6; ++q) {
      ++r.checks;
      const double rhs = 2.0 * std::pow(sf.power_integral(q), 1.0 / q);
      if (!le_slack(delta, rhs)) r.fail(describe("Delta > 2 M_q^{1/q}", n, delta, rhs, static_cast<int>(q)));
    }
  }
  return r;
}

Result recursion(std::uint64_t max) {
  Result r = start("recursion", max);
  const SieveTable sieve(std::max<std::uint64_t>(max, 2));
  // Every chain step (n_k, n_{k+1}) of a squarefree n <= max is (N / P+(N), N)
  // for a squarefree N <= max, so iterating N covers each step once.
  for (std::uint64_t big = 2; big <= max; ++big) {
    const Factorization f = factorize(big, &sieve);
    if (!f.squarefree()) continue;
    const std::uint64_t p = f.factors.back().prime;
    const std::uint64_t m = big / p;
    const LogDivisorProfile pm = LogDivisorProfile::of(m, &sieve);
    const LogDivisorProfile pb(divisors(f));
    const StepFunction sm = profile(pm);
    const StepFunction sb = profile(pb);
    for (unsigned q = 1; q <= 5; ++q) {
      ++r.checks;
      const double lhs = sb.power_integral(q);
      const double rhs = 2.0 * sm.power_integral(q) + (q >= 2 ? w_q(pm, p, q) : 0.0);
      if (!rel_close(lhs, rhs, kRouteAgreement)) r.fail(describe("M_q(mp) != 2M_q(m)+W_q", big, lhs, rhs, static_cast<int>(q)));
    }
    r.checks += 2;
    const double m2_big = sb.power_integral(2);
    const double m2_small = sm.power_integral(2);
    if (!le_slack(2.0 * m2_small, m2_big)) r.fail(describe("M_2(mp) < 2 M_2(m)", big, m2_big, 2 * m2_small));
    const double l_big = support_measure(pb);
    const double l_small = support_measure(pm);
    if (!le_slack(l_big, 2.0 * l_small)) r.fail(describe("L(mp) > 2 L(m)", big, l_big, 2 * l_small));
  }
  return r;
}

Result holder(std::uint64_t max) {
  Result r = start("holder", max);
  const SieveTable sieve(std::max<std::uint64_t>(max, 2));
  for (std::uint64_t n = 1; n <= max; ++n) {
    const StepFunction sf = profile(LogDivisorProfile(divisors(factorize(n, &sieve))));
    double m[9];
    for (unsigned q = 1; q <= 8; ++q) m[q] = sf.power_integral(q);
    for (unsigned q = 4; q <= 8; ++q) {
      for (unsigned j = 2; j + 2 <= q; ++j) {
        ++r.checks;
        if (!le_slack(m[j] * m[q - j], m[2] * m[q - 2])) {
          r.fail(describe("M_j M_{q-j} > M_2 M_{q-2}", n, m[j] * m[q - j], m[2] * m[q - 2], static_cast<int>(q)));
        }
      }
    }
    for (unsigned q = 5; q <= 8; ++q) {
      for (unsigned l = 2; l + 2 <= q; ++l) {
        ++r.checks;
        const double t = static_cast<double>(l - 2) / (q - 4);
        const double rhs = std::pow(m[2], 1.0 - t) * std::pow(m[q - 2], t);
        if (!le_slack(m[l], rhs)) r.fail(describe("interpolation", n, m[l], rhs, static_cast<int>(q)));
      }
    }
  }
  return r;
}

Result mstar_bound(std::uint64_t max) {
  Result r = start("mstar", max);
  const SieveTable sieve(std::max<std::uint64_t>(max, 2));
  for (std::uint64_t n = 1; n <= max; ++n) {
    const LogDivisorProfile p(divisors(factorize(n, &sieve)));
    const StepFunction sf = profile(p);
    for (unsigned l = 1; l <= 4; ++l) {
      ++r.checks;
      const auto lhs = static_cast<double>(mstar(p, l));
      const double rhs = std::ldexp(sf.power_integral(l), static_cast<int>(l));
      if (!le_slack(lhs, rhs)) r.fail(describe("M*_l > 2^l M_l", n, lhs, rhs, static_cast<int>(l)));
    }
  }
  return r;
}

Result squarefree_lower(std::uint64_t max) {
  Result r = start("squarefree-lower", max);
  const SieveTable sieve(std::max<std::uint64_t>(max, 2));
  for (std::uint64_t n = 1; n <= max; ++n) {
    const Factorization f = factorize(n, &sieve);
    if (!f.squarefree()) continue;
    ++r.checks;
    const LogDivisorProfile p(divisors(f));
    const double lhs = std::ldexp(1.0, 2 * static_cast<int>(f.factors.size()));
    const double rhs = support_measure(p) * moment(p, 2).value;
    if (!le_slack(lhs, rhs)) r.fail(describe("4^k > L M_2", n, lhs, rhs));
  }
  return r;
}

Result trivial_bounds(std::uint64_t max) {
  Result r = start("trivial-bounds", max);
  const SieveTable sieve(std::max<std::uint64_t>(max, 2));
  for (std::uint64_t n = 1; n <= max; ++n) {
    const LogDivisorProfile p(divisors(factorize(n, &sieve)));
    const StepFunction sf = profile(p);
    const auto tau = static_cast<double>(p.tau());
    const double L = support_measure(p);
    const double m2 = sf.power_integral(2);
    r.checks += 2;
    if (!le_slack(1.0 / m2, L / (tau * tau))) r.fail(describe("1/M_2 > L/tau^2", n, 1.0 / m2, L / (tau * tau)));
    if (!le_slack(L, tau)) r.fail(describe("L > tau", n, L, tau));
    for (unsigned q = 1; q <= 6; ++q) {
      ++r.checks;
      const double mq = sf.power_integral(q);
      const double cap = std::pow(tau, q);
      if (!le_slack(mq, cap)) r.fail(describe("M_q > tau^q", n, mq, cap, static_cast<int>(q)));
    }
  }
  return r;
}

Result tail_transfer(std::uint64_t max, std::uint64_t count, std::uint64_t seed) {
  Result r = start("tail-transfer", max);
  ScanConfig config;
  config.x = max;
  const auto sample = seeded_sample(count, 1, max, seed);
  const auto report = tail_transfer_check(config, sample);
  r.checks = report.rows.size();
  for (const auto& row : report.rows) {
    if (!row.holds) {
      r.fail("Delta(n) > Delta(n_K) 2^Omega(n/n_K) at n=" + std::to_string(row.n));
    }
  }
  return r;
}

Result waring(std::uint64_t max) {
  Result r = start("waring", max);
  WaringForm form;  // 1*n0^2 + n1^4 + n2^4
  const RepTable table = enumerate(form, max);

  ++r.checks;
  std::uint64_t total = 0;
  for (const auto& rec : table.records) total += rec.total;
  if (total != lattice_tuple_count(form, max)) r.fail("tuple conservation fails at x=" + std::to_string(max));

  WaringForm swapped = form;
  std::swap(swapped.ell[1], swapped.ell[2]);
  std::swap(swapped.c[1], swapped.c[2]);
  const RepTable table2 = enumerate(swapped, max);

  std::uint64_t prev_n = 0;
  std::uint64_t prev_v = 0;
  const std::uint64_t step = std::max<std::uint64_t>(1, max / 1000);
  for (std::uint64_t x = 0; x <= max; x += step) {
    const std::uint64_t n = count_N(table, x);
    const std::uint64_t v = count_V(table, x);
    r.checks += 4;
    if (n < prev_n || v < prev_v) r.fail("N or V decreases at x=" + std::to_string(x));
    if (n % 2 != 0) r.fail("N odd at x=" + std::to_string(x));
    if (n != count_N(table2, x) || v != count_V(table2, x)) {
      r.fail("coordinate permutation changes N or V at x=" + std::to_string(x));
    }
    prev_n = n;
    prev_v = v;
  }
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "subadditivity", "moment-oracle",  "identities",     "concentration",
      "recursion",     "holder",         "mstar",          "squarefree-lower",
      "trivial-bounds", "tail-transfer", "waring"};
  return names;
}

Result run(const std::string& suite, std::uint64_t max, std::uint64_t seed) {
  auto pick = [max](std::uint64_t def) { return max == 0 ? def : max; };
  if (suite == "subadditivity") return subadditivity(pick(300));
  if (suite == "moment-oracle") return moment_oracle(pick(2000));
  if (suite == "identities") return identities(pick(100000));
  if (suite == "concentration") return concentration(pick(100000));
  if (suite == "recursion") return recursion(pick(100000));
  if (suite == "holder") return holder(pick(10000));
  if (suite == "mstar") return mstar_bound(pick(10000));
  if (suite == "squarefree-lower") return squarefree_lower(pick(100000));
  if (suite == "trivial-bounds") return trivial_bounds(pick(10000));
  if (suite == "tail-transfer") return tail_transfer(pick(10'000'000), 10'000, seed);
  if (suite == "waring") return waring(pick(10000));
  throw ConfigError("unknown verify suite '" + suite + "'");
}

}  // namespace hooley::verify
