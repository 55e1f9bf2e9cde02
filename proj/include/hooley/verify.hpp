#pragma once

// Exhaustive property suites over integer ranges. Each suite returns the
// number of individual assertions made and a (capped) list of failures.

#include <cstdint>
#include <string>
#include <vector>

namespace hooley::verify {

/// Relative slack for inequalities that hold with equality in some cases
/// (n = 1, disjoint supports, j = 2 in the Holder chain): only floating-point
/// rounding is forgiven.
inline constexpr double kRoundingSlack = 1e-12;
/// Agreement required between two routes to the same real quantity.
inline constexpr double kRouteAgreement = 1e-9;

struct Result {
  std::string suite;
  std::uint64_t max = 0;
  std::uint64_t checks = 0;
  std::uint64_t failure_count = 0;
  std::vector<std::string> failures;  // first few, human readable

  bool passed() const { return failure_count == 0; }
  void fail(std::string what);
};

/// Delta(mn) <= tau(m) Delta(n) for all m, n <= max.
Result subadditivity(std::uint64_t max = 300);
/// Breakpoint M_q against the tuple-sum oracle, n <= max, q <= 4.
Result moment_oracle(std::uint64_t max = 2000);
/// M_1(n) = tau(n) and the profile integral equals tau(n), n <= max; M_q(1) = 1, q <= 10.
Result identities(std::uint64_t max = 100000);
/// Delta(n) <= 2 M_q(n)^{1/q}, n <= max, q <= 6.
Result concentration(std::uint64_t max = 100000);
/// M_q(mp) = 2 M_q(m) + W_q(m, p) on every prime-chain step of squarefree
/// n <= max (q <= 5), plus M_2(mp) >= 2 M_2(m) and L(mp) <= 2 L(m).
Result recursion(std::uint64_t max = 100000);
/// M_j M_{q-j} <= M_2 M_{q-2} and log-convex interpolation of M_l, n <= max, q <= 8.
Result holder(std::uint64_t max = 10000);
/// M*_l(n) <= 2^l M_l(n), l <= 4, n <= max.
Result mstar_bound(std::uint64_t max = 10000);
/// 4^k <= L(n) M_2(n) for squarefree n <= max with omega(n) = k.
Result squarefree_lower(std::uint64_t max = 100000);
/// 1/M_2 <= L/tau^2, L <= tau, M_q <= tau^q (q <= 6), n <= max.
Result trivial_bounds(std::uint64_t max = 10000);
/// Delta(n) <= Delta(n_K) 2^{Omega(n/n_K)} on `count` seeded integers <= max.
Result tail_transfer(std::uint64_t max = 10'000'000, std::uint64_t count = 10'000,
                     std::uint64_t seed = 1);
/// Conservation, monotonicity, coordinate symmetry and evenness of N for the
/// quartic form 1*n0^2 + n1^4 + n2^4 up to max.
Result waring(std::uint64_t max = 10000);

/// Suite names accepted by run().
const std::vector<std::string>& suite_names();

/// Runs a suite by name with the given bound (0 selects its default).
/// Throws ConfigError for unknown names.
Result run(const std::string& suite, std::uint64_t max = 0, std::uint64_t seed = 1);

}  // namespace hooley::verify
