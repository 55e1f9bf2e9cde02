#pragma once

// Factorization, divisor generation and the classical arithmetic functions.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hooley {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization of n >= 1: primes strictly increasing, exponents >= 1,
/// empty for n = 1.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;

  bool squarefree() const;
  std::uint64_t radical() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Smallest-prime-factor table for 2 <= m <= limit, built with a linear sieve.
class SieveTable {
 public:
  static constexpr std::uint64_t kDefaultCap = 100'000'000;

  explicit SieveTable(std::uint64_t limit, std::uint64_t cap = kDefaultCap);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t spf(std::uint64_t m) const { return spf_[m]; }
  bool is_prime(std::uint64_t m) const { return m >= 2 && spf_[m] == m; }
  std::span<const std::uint32_t> primes() const { return primes_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

SieveTable build_sieve(std::uint64_t limit, std::uint64_t cap = SieveTable::kDefaultCap);

/// Uses the table when n is inside it, trial division otherwise.
Factorization factorize(std::uint64_t n, const SieveTable* table = nullptr);
void factorize_into(std::uint64_t n, const SieveTable* table, Factorization& out);

/// Factorizes every integer of [lo, hi] by sieving with the base primes.
/// Base primes must cover sqrt(hi).
class SegmentFactorizer {
 public:
  explicit SegmentFactorizer(std::span<const std::uint32_t> base_primes);

  /// out[i] receives the factorization of lo + i.
  void factor_range(std::uint64_t lo, std::uint64_t hi, std::vector<Factorization>& out);

 private:
  std::span<const std::uint32_t> base_primes_;
  std::vector<std::uint64_t> remaining_;
};

/// Primes up to `limit` (simple Eratosthenes), used as base primes for segments.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

constexpr std::size_t kDefaultDivisorCap = std::size_t{1} << 20;

/// All divisors of n, strictly increasing.
std::vector<std::uint64_t> divisors(const Factorization& f,
                                    std::size_t cap = kDefaultDivisorCap);
/// Same, into a reused buffer.
void divisors_into(const Factorization& f, std::vector<std::uint64_t>& out,
                   std::size_t cap = kDefaultDivisorCap);

std::uint64_t divisor_count(const Factorization& f);

struct Classical {
  unsigned omega;  // distinct primes
  unsigned Omega;  // with multiplicity
  std::uint64_t tau;
  int mu;
  std::uint64_t p_plus;   // 1 for n = 1
  std::uint64_t p_minus;  // 1 for n = 1

  friend bool operator==(const Classical&, const Classical&) = default;
};

Classical classical(const Factorization& f);

/// Product of the k smallest distinct primes of n; the radical once k >= omega(n).
/// For non-squarefree n this is a radical prefix, not a divisor prefix of n itself.
struct KernelPrefix {
  unsigned k;
  std::uint64_t value;
};

KernelPrefix kernel_prefix(const Factorization& f, unsigned k);

/// Number of distinct primes p | n with p <= t.
unsigned omega_below(const Factorization& f, double t);

/// Membership in the set of squarefree n whose k-th prime satisfies
/// log log p_k(n) > k/5 for every k in [xi, k_cap] with omega(n) >= k.
bool in_A_x(const Factorization& f, unsigned xi, unsigned k_cap);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace hooley
