#include "hooley/waring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "hooley/error.hpp"

namespace hooley {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// c * base^exp, saturating at limit + 1.
std::uint64_t term_value(std::uint64_t c, std::uint64_t base, unsigned exp, std::uint64_t limit) {
  unsigned __int128 v = c;
  for (unsigned i = 0; i < exp; ++i) {
    v *= base;
    if (v > limit) return limit + 1;
  }
  return static_cast<std::uint64_t>(v);
}

// Visits the coordinates n_k, ..., n_1 (outermost first) and calls
// emit(partial_sum) for every choice with partial_sum <= x. The outermost
// coordinate is restricted to values congruent to `stripe` mod `stripes`.
template <class Emit>
void walk_high(const WaringForm& form, std::uint64_t x, unsigned j, std::uint64_t partial,
               unsigned stripe, unsigned stripes, Emit& emit) {
  if (j == 0) {
    emit(partial);
    return;
  }
  const std::uint64_t start = form.allow_zero ? 0 : 1;
  const bool outermost = j == form.k;
  for (std::uint64_t v = start;; ++v) {
    const std::uint64_t t = term_value(form.c[j], v, form.ell[j], x);
    if (t > x - partial) break;
    if (outermost && (v - start) % stripes != stripe) continue;
    walk_high(form, x, j - 1, partial + t, stripe, stripes, emit);
  }
}

}  // namespace

bool balanced_exponents(const WaringForm& form) {
  // sum_{j>=1} L/l_j == L/2 with L the lcm of 2 and every l_j.
  std::uint64_t L = 2;
  for (std::size_t j = 1; j < form.ell.size(); ++j) L = std::lcm(L, std::uint64_t{form.ell[j]});
  std::uint64_t sum = 0;
  for (std::size_t j = 1; j < form.ell.size(); ++j) sum += L / form.ell[j];
  return sum * 2 == L;
}

void validate(const WaringForm& form, bool strict) {
  if (form.k < 1) throw ConfigError("form needs k >= 1");
  if (form.c.size() != form.k + 1 || form.ell.size() != form.k + 1) {
    throw ConfigError("form needs k+1 coefficients and k+1 exponents (k=" +
                      std::to_string(form.k) + ")");
  }
  for (std::uint64_t c : form.c) {
    if (c < 1) throw ConfigError("coefficients c_j must be >= 1");
  }
  for (unsigned l : form.ell) {
    if (l < 2) throw ConfigError("exponents l_j must be >= 2");
  }
  if (form.ell[0] != 2) throw ConfigError("leading exponent l_0 must equal 2 (= min l_j)");
  if (strict && !balanced_exponents(form)) {
    throw ConfigError("strict mode: sum_{j>=1} 1/l_j must equal 1/2");
  }
}

double estimated_tuples(const WaringForm& form, std::uint64_t x) {
  double est = 1.0;
  for (unsigned j = 0; j <= form.k; ++j) {
    est *= std::floor(std::pow(static_cast<double>(x) / static_cast<double>(form.c[j]),
                               1.0 / form.ell[j])) + 1.0;
  }
  return est;
}

RepTable enumerate(const WaringForm& form, std::uint64_t x, unsigned workers, double cap) {
  validate(form);
  const double est = estimated_tuples(form, x);
  if (est > cap) {
    throw CapacityError("estimated " + std::to_string(est) + " tuples exceeds cap " +
                        std::to_string(cap));
  }
  const unsigned stripes = std::max(1u, workers);
  const std::uint64_t start0 = form.allow_zero ? 0 : 1;

  using Entry = std::pair<std::uint64_t, std::uint64_t>;  // (value, n_0)
  std::vector<std::vector<Entry>> runs(stripes);
  auto work = [&](unsigned stripe) {
    auto& run = runs[stripe];
    auto emit = [&](std::uint64_t partial) {
      const std::uint64_t room = (x - partial) / form.c[0];
      const std::uint64_t top = isqrt(room);
      for (std::uint64_t n0 = start0; n0 <= top; ++n0) {
        run.emplace_back(partial + form.c[0] * n0 * n0, n0);
      }
    };
    walk_high(form, x, form.k, 0, stripe, stripes, emit);
    std::sort(run.begin(), run.end());
  };
  if (stripes == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < stripes; ++s) pool.emplace_back(work, s);
    for (auto& t : pool) t.join();
  }

  // Pairwise merge of the sorted runs.
  while (runs.size() > 1) {
    std::vector<std::vector<Entry>> next;
    for (std::size_t i = 0; i + 1 < runs.size(); i += 2) {
      std::vector<Entry> merged;
      merged.reserve(runs[i].size() + runs[i + 1].size());
      std::merge(runs[i].begin(), runs[i].end(), runs[i + 1].begin(), runs[i + 1].end(),
                 std::back_inserter(merged));
      next.push_back(std::move(merged));
    }
    if (runs.size() % 2 == 1) next.push_back(std::move(runs.back()));
    runs = std::move(next);
  }
  const std::vector<Entry>& all = runs.front();

  RepTable table;
  table.x = x;
  table.allow_zero = form.allow_zero;
  table.tuples = all.size();
  for (const auto& [value, n0] : all) {
    if (table.records.empty() || table.records.back().value != value) {
      table.records.push_back({value, 0, {}});
    }
    RepRecord& rec = table.records.back();
    ++rec.total;
    if (rec.leading.empty() || rec.leading.back().first != n0) rec.leading.emplace_back(n0, 0);
    ++rec.leading.back().second;
  }
  return table;
}

std::uint64_t count_V(const RepTable& table, std::uint64_t limit) {
  std::uint64_t v = 0;
  for (const auto& rec : table.records) {
    if (rec.value > limit) break;
    if (rec.value >= 1) ++v;
  }
  return v;
}

std::uint64_t count_V(const RepTable& table) { return count_V(table, table.x); }

std::uint64_t count_N(const RepTable& table, std::uint64_t limit) {
  std::uint64_t n = 0;
  for (const auto& rec : table.records) {
    if (rec.value > limit) break;
    std::uint64_t same = 0;
    for (const auto& [a, s] : rec.leading) same += s * s;
    n += rec.total * rec.total - same;
  }
  return n;
}

std::uint64_t count_N(const RepTable& table) { return count_N(table, table.x); }

std::uint64_t lattice_tuple_count(const WaringForm& form, std::uint64_t x) {
  validate(form);
  std::uint64_t count = 0;
  auto emit = [&](std::uint64_t partial) {
    const std::uint64_t top = isqrt((x - partial) / form.c[0]);
    count += form.allow_zero ? top + 1 : top;
  };
  walk_high(form, x, form.k, 0, 0, 1, emit);
  return count;
}

std::vector<WaringRow> bound_curve(const WaringForm& form,
                                   std::span<const std::uint64_t> checkpoints, double a,
                                   unsigned workers, double cap) {
  if (checkpoints.empty()) return {};
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw ConfigError("checkpoints must be ascending");
  }
  const RepTable table = enumerate(form, checkpoints.back(), workers, cap);
  std::vector<WaringRow> rows;
  for (std::uint64_t cx : checkpoints) {
    WaringRow row{cx, count_N(table, cx), count_V(table, cx), 0.0, 0.0};
    const double xd = static_cast<double>(cx);
    const double ll = cx >= 3 ? std::log(std::log(xd)) : 0.0;
    const double env = std::exp(a * std::sqrt(std::max(0.0, ll)));
    if (cx > 0) {
      row.N_ratio = static_cast<double>(row.N) / (xd * env);
      row.V_ratio = static_cast<double>(row.V) * env / xd;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hooley
