#pragma once

// Range scans of Delta(n) with a multiplicative weight: the weighted sum
// S(x; g), the logarithmic means D(x; g) and D^-(x; g), the Delta
// distribution, bound-ratio curves, and the frequency checks of the
// normal-order induction.
//
// Iterated logarithms are natural-base throughout: loglog x = log(log x).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hooley/arith.hpp"
#include "hooley/weights.hpp"

namespace hooley {

/// Just above sqrt(2) log 2 = 0.980258...
inline constexpr double kDefaultEnvelopeConstant = 0.9803;

/// Exceedance exponents reported by default: the claimed lower exponent, the
/// improved upper exponent, and the earlier upper exponent log 2.
inline const std::vector<double> kDefaultGammas = {0.35332, 0.6102495, 0.693147};

/// Normal-order statistics start above e^e, where loglog n > 1.
inline constexpr std::uint64_t kNormalOrderStart = 15;

inline constexpr std::uint32_t kHistogramCap = 1'000'000;

struct ScanConfig {
  std::uint64_t x = 10;
  WeightSpec weight = weights::unit();
  std::uint64_t segment_size = 100'000;
  double a = kDefaultEnvelopeConstant;
  double epsilon = 0.1;
  std::optional<unsigned> xi;  // default max(1, floor(logloglog x))
  unsigned workers = 0;        // 0: hardware concurrency
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> gammas;  // normal-order exceedance exponents
  std::uint64_t max_x = 10'000'000'000ULL;
};

/// The slowly growing cutoff xi(x).
unsigned xi_of(const ScanConfig& config);
/// K_x = ceil((2 + epsilon) loglog x), 0 when loglog x <= 0.
unsigned k_cap_of(const ScanConfig& config);
/// q(k) = ceil(2 sqrt k); diagnostic only.
unsigned q_of_k(unsigned k);

/// S(x; g) divided by each envelope that applies to the weight's y. Envelopes
/// that are not finite and positive at this x are omitted.
std::map<std::string, double> bound_ratios(double S, double x, double y, double a);

struct CheckpointRow {
  std::uint64_t x;
  double S;
  std::map<std::string, double> ratios;

  friend bool operator==(const CheckpointRow&, const CheckpointRow&) = default;
};

struct NormalOrderRow {
  double gamma;
  std::uint64_t exceed;  // n in (15, x] with Delta(n) > (loglog n)^gamma
  std::uint64_t total;
  double fraction;

  friend bool operator==(const NormalOrderRow&, const NormalOrderRow&) = default;
};

struct Quantile {
  double level;
  std::uint32_t value;

  friend bool operator==(const Quantile&, const Quantile&) = default;
};

struct ScanReport {
  std::uint64_t x = 0;
  std::string weight_name;
  double y = 1.0;
  double A = 1.0;
  double a = kDefaultEnvelopeConstant;
  double epsilon = 0.1;
  unsigned xi = 1;
  unsigned k_cap = 0;
  unsigned q_of_k_cap = 0;
  double S = 0.0;
  double D = 0.0;
  double D_minus = 0.0;
  std::map<std::uint32_t, std::uint64_t> delta_histogram;
  std::uint64_t histogram_overflow = 0;
  std::vector<Quantile> quantiles;
  std::map<std::string, double> bound_ratios;
  std::vector<CheckpointRow> checkpoints;
  std::vector<NormalOrderRow> normal_order;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

/// Scans 1 <= n <= x. Sums are accumulated in fixed point, so the report is
/// bit-identical for any segment size and worker count.
ScanReport scan(const ScanConfig& config);

/// S(x; g) and its envelope ratios at each checkpoint (ascending).
std::vector<CheckpointRow> bound_ratio_curve(const ScanConfig& config,
                                             std::span<const std::uint64_t> checkpoints);

/// D_k(x; g) = sum_{n <= x} mu(n)^2 g(n) Delta(n_k) / n.
double truncated_harmonic(const ScanConfig& config, unsigned k);

struct TailMass {
  double threshold;  // 2 y loglog x
  double tail;       // sum of g(n) Delta(n) over 2 <= n <= x with omega(n) > threshold
  double S;
  double ratio;
};

TailMass omega_tail_mass(const ScanConfig& config, double y_param);

/// Fraction of n in (15, x] with Delta(n) > (loglog n)^gamma, per gamma.
std::vector<NormalOrderRow> normal_order_report(const ScanConfig& config,
                                                std::span<const double> gammas);

// ---- normal-order induction ------------------------------------------------

struct InductionParams {
  double lambda = 1.1;
  double gamma = 0.99;
  double delta = 1.3;
  double e1 = 2.7;
  double alpha = 0.2;
  double r = 10.0;
};

/// Throws ConfigError unless delta log2 / lambda < gamma < 1,
/// 1 < delta < lambda (gamma - 1) + 1/log 2, 1 < lambda < 2, 0 < e1 < e,
/// alpha > 0 and r > 1/alpha.
void validate_induction_params(const InductionParams& p);

/// b = 2^{1 - delta + delta/lambda} e^{alpha/lambda - c} and
/// g = 2^{delta/lambda} e^{alpha/lambda - c}. The exponent c is a parameter:
/// the derivation that produces these constants carries e^{-gamma}.
struct InductionConstants {
  double exponent_c;
  double b;
  double g;
};

InductionConstants induction_constants(const InductionParams& p, double exponent_c);

/// K(n, x) = max{k <= omega(n) : loglog p_k(n) < loglog x - xi}, 0 if none.
unsigned induction_top_index(const Factorization& f, double x, unsigned xi);

/// The kernel prod_{xi < j <= min(k, K)} p_j(n).
std::uint64_t induction_kernel(const Factorization& f, unsigned k, unsigned top, unsigned xi);

struct PpxRow {
  unsigned k;
  std::uint64_t samples = 0;
  std::uint64_t moment_bound_violations = 0;     // M_q(n_k) <= 2^{delta k} (q!)^gamma
  std::uint64_t recursion_checked = 0;
  std::uint64_t recursion_violations = 0;        // one-step moment recursion bound
  std::uint64_t delta_bound_violations = 0;      // Delta(n_k) <= r + e^{alpha k/q} M_q^{1/q}
  double moment_bound_fraction = 0.0;
  double recursion_fraction = 0.0;
  double delta_bound_fraction = 0.0;
};

struct PpxReport {
  InductionParams params;
  InductionConstants constants;
  std::uint64_t x;
  unsigned xi;
  std::uint64_t sampled = 0;
  std::uint64_t skipped = 0;  // no k with xi < k <= K(n, x)
  std::vector<PpxRow> rows;
};

PpxReport ppx_induction_check(const ScanConfig& config, const InductionParams& params,
                              std::span<const std::uint64_t> sample);

struct TailTransferRow {
  std::uint64_t n;
  std::uint64_t kernel;  // n_K
  std::uint32_t delta_n;
  std::uint32_t delta_kernel;
  unsigned omega_rest;  // Omega(n / n_K)
  bool holds;
};

struct TailTransferReport {
  std::vector<TailTransferRow> rows;
  std::uint64_t violations = 0;
  double max_ratio = 0.0;  // max of Delta(n) / (Delta(n_K) 2^Omega(n/n_K))
};

/// Checks Delta(n) <= Delta(n_K) 2^{Omega(n/n_K)} for every sampled n.
TailTransferReport tail_transfer_check(const ScanConfig& config,
                                       std::span<const std::uint64_t> sample);

/// `count` integers drawn uniformly from [lo, hi] by a seeded mt19937_64.
std::vector<std::uint64_t> seeded_sample(std::size_t count, std::uint64_t lo, std::uint64_t hi,
                                         std::uint64_t seed);

/// Same, keeping only squarefree draws with at least `min_omega` prime factors.
std::vector<std::uint64_t> seeded_squarefree_sample(std::size_t count, std::uint64_t lo,
                                                    std::uint64_t hi, std::uint64_t seed,
                                                    unsigned min_omega);

}  // namespace hooley
