#include "hooley/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hooley/error.hpp"

namespace hooley {

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::uint64_t Factorization::radical() const {
  std::uint64_t r = 1;
  for (const auto& pp : factors) r *= pp.prime;
  return r;
}

SieveTable::SieveTable(std::uint64_t limit, std::uint64_t cap) : limit_(limit) {
  if (limit < 2 || limit > cap) {
    throw CapacityError("sieve limit " + std::to_string(limit) + " outside [2, " +
                        std::to_string(cap) + "]");
  }
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    // Each composite is struck exactly once, by its smallest prime factor.
    for (std::uint32_t p : primes_) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

SieveTable build_sieve(std::uint64_t limit, std::uint64_t cap) {
  return SieveTable(limit, cap);
}

namespace {

void trial_divide(std::uint64_t n, Factorization& out) {
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.factors.push_back({p, e});
  };
  take(2);
  take(3);
  // 6k +- 1 wheel
  for (std::uint64_t p = 5; p <= n / p; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) out.factors.push_back({n, 1});
}

}  // namespace

void factorize_into(std::uint64_t n, const SieveTable* table, Factorization& out) {
  out.n = n;
  out.factors.clear();
  if (n <= 1) return;
  if (table != nullptr && n <= table->limit()) {
    while (n > 1) {
      const std::uint32_t p = table->spf(n);
      unsigned e = 0;
      do {
        n /= p;
        ++e;
      } while (n % p == 0);
      out.factors.push_back({p, e});
    }
    return;
  }
  trial_divide(n, out);
}

Factorization factorize(std::uint64_t n, const SieveTable* table) {
  Factorization f;
  factorize_into(n, table, f);
  return f;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

SegmentFactorizer::SegmentFactorizer(std::span<const std::uint32_t> base_primes)
    : base_primes_(base_primes) {}

void SegmentFactorizer::factor_range(std::uint64_t lo, std::uint64_t hi,
                                     std::vector<Factorization>& out) {
  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  out.resize(len);
  remaining_.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    remaining_[i] = lo + i;
    out[i].n = lo + i;
    out[i].factors.clear();
  }
  for (std::uint64_t p : base_primes_) {
    if (p * p > hi) break;
    std::uint64_t first = (lo + p - 1) / p * p;
    for (std::uint64_t m = first; m <= hi; m += p) {
      const std::size_t i = static_cast<std::size_t>(m - lo);
      unsigned e = 0;
      do {
        remaining_[i] /= p;
        ++e;
      } while (remaining_[i] % p == 0);
      out[i].factors.push_back({p, e});
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (remaining_[i] > 1) out[i].factors.push_back({remaining_[i], 1});
  }
}

std::uint64_t divisor_count(const Factorization& f) {
  std::uint64_t t = 1;
  for (const auto& pp : f.factors) t *= pp.exponent + 1;
  return t;
}

void divisors_into(const Factorization& f, std::vector<std::uint64_t>& out, std::size_t cap) {
  const std::uint64_t tau = divisor_count(f);
  if (tau > cap) {
    throw CapacityError("divisor count " + std::to_string(tau) + " of " +
                        std::to_string(f.n) + " exceeds cap " + std::to_string(cap));
  }
  out.clear();
  out.reserve(tau);
  out.push_back(1);
  for (const auto& pp : f.factors) {
    const std::size_t base = out.size();
    std::uint64_t power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
}

std::vector<std::uint64_t> divisors(const Factorization& f, std::size_t cap) {
  std::vector<std::uint64_t> out;
  divisors_into(f, out, cap);
  return out;
}

Classical classical(const Factorization& f) {
  Classical c{0, 0, 1, 1, 1, 1};
  c.omega = static_cast<unsigned>(f.factors.size());
  for (const auto& pp : f.factors) {
    c.Omega += pp.exponent;
    c.tau *= pp.exponent + 1;
    if (pp.exponent > 1) c.mu = 0;
  }
  if (c.mu != 0 && c.omega % 2 == 1) c.mu = -1;
  if (!f.factors.empty()) {
    c.p_minus = f.factors.front().prime;
    c.p_plus = f.factors.back().prime;
  }
  return c;
}

KernelPrefix kernel_prefix(const Factorization& f, unsigned k) {
  std::uint64_t value = 1;
  const std::size_t take = std::min<std::size_t>(k, f.factors.size());
  for (std::size_t i = 0; i < take; ++i) value *= f.factors[i].prime;
  return {k, value};
}

unsigned omega_below(const Factorization& f, double t) {
  unsigned count = 0;
  for (const auto& pp : f.factors) {
    if (static_cast<double>(pp.prime) <= t) ++count;
  }
  return count;
}

bool in_A_x(const Factorization& f, unsigned xi, unsigned k_cap) {
  if (xi > k_cap) {
    throw ConfigError("in_A_x requires xi <= K_cap (got xi=" + std::to_string(xi) +
                      ", K_cap=" + std::to_string(k_cap) + ")");
  }
  if (!f.squarefree()) return false;
  const unsigned omega = static_cast<unsigned>(f.factors.size());
  const unsigned last = std::min(k_cap, omega);
  for (unsigned k = std::max(xi, 1u); k <= last; ++k) {
    const double p = static_cast<double>(f.factors[k - 1].prime);
    if (!(std::log(std::log(p)) > k / 5.0)) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace hooley
