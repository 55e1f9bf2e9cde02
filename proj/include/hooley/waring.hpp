#pragma once

// Representation counting for diagonal forms c_0 n_0^2 + sum_{j>=1} c_j n_j^{l_j}.
//
// N(x) counts ordered pairs of representations (m, n) of a common value
// v <= x with distinct leading coordinates m_0 != n_0. V(x) counts the
// integers 1 <= v <= x having at least one representation.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hooley {

struct WaringForm {
  unsigned k = 2;
  std::vector<std::uint64_t> c{1, 1, 1};
  std::vector<unsigned> ell{2, 4, 4};
  bool allow_zero = true;
};

/// Throws ConfigError unless sizes are k+1, every c_j >= 1, every l_j >= 2 and
/// l_0 = 2. With `strict`, also requires sum_{j>=1} 1/l_j = 1/2 exactly.
void validate(const WaringForm& form, bool strict = false);

/// True iff sum_{j>=1} 1/l_j == 1/2 as rationals.
bool balanced_exponents(const WaringForm& form);

struct RepRecord {
  std::uint64_t value;
  std::uint64_t total;
  // (n_0, count) pairs, n_0 ascending.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> leading;
};

struct RepTable {
  std::uint64_t x = 0;
  bool allow_zero = true;
  std::vector<RepRecord> records;  // value ascending
  std::uint64_t tuples = 0;
};

inline constexpr double kDefaultTupleCap = 1e8;

/// Upper estimate of the number of tuples with value <= x.
double estimated_tuples(const WaringForm& form, std::uint64_t x);

/// Every tuple with value <= x exactly once, grouped by value.
RepTable enumerate(const WaringForm& form, std::uint64_t x, unsigned workers = 1,
                   double cap = kDefaultTupleCap);

/// Values with 1 <= v <= limit (defaults to the table's x).
std::uint64_t count_V(const RepTable& table);
std::uint64_t count_V(const RepTable& table, std::uint64_t limit);

/// sum_v T(v)^2 - sum_a s_a(v)^2 over values v <= limit.
std::uint64_t count_N(const RepTable& table);
std::uint64_t count_N(const RepTable& table, std::uint64_t limit);

/// Number of tuples with value <= x, counted by nested loops with the square
/// coordinate resolved through an integer square root.
std::uint64_t lattice_tuple_count(const WaringForm& form, std::uint64_t x);

struct WaringRow {
  std::uint64_t x;
  std::uint64_t N;
  std::uint64_t V;
  double N_ratio;  // N / (x e^{a sqrt(loglog x)})
  double V_ratio;  // V e^{a sqrt(loglog x)} / x
};

std::vector<WaringRow> bound_curve(const WaringForm& form,
                                   std::span<const std::uint64_t> checkpoints, double a,
                                   unsigned workers = 1, double cap = kDefaultTupleCap);

}  // namespace hooley
