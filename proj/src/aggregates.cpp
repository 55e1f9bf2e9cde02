#include "hooley/aggregates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "hooley/delta.hpp"
#include "hooley/error.hpp"
#include "hooley/summation.hpp"

namespace hooley {

namespace {

double loglog(double x) { return std::log(std::log(x)); }

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct Segment {
  std::uint64_t lo;
  std::uint64_t hi;
};

// Splits [lo, hi] into pieces of at most `size`, also ending a piece at every cut.
std::vector<Segment> plan_segments(std::uint64_t lo, std::uint64_t hi, std::uint64_t size,
                                   std::span<const std::uint64_t> cuts) {
  std::vector<Segment> segs;
  auto cut = cuts.begin();
  for (std::uint64_t start = lo; start <= hi;) {
    while (cut != cuts.end() && *cut < start) ++cut;
    std::uint64_t end = std::min(hi, start + size - 1);
    if (cut != cuts.end() && *cut < end) end = *cut;
    segs.push_back({start, end});
    start = end + 1;
  }
  return segs;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs visit(partial, factorization, workspace) for every n of every segment,
// in increasing n within a segment. Segments are claimed dynamically by the
// workers; partials come back in segment order.
template <class Partial, class Visit>
std::vector<Partial> run_segments(const std::vector<Segment>& segs, unsigned workers,
                                  const Partial& prototype, Visit visit) {
  std::vector<Partial> partials(segs.size(), prototype);
  if (segs.empty()) return partials;
  const std::vector<std::uint32_t> base = primes_up_to(isqrt(segs.back().hi) + 1);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    SegmentFactorizer factorizer(base);
    std::vector<Factorization> facs;
    DeltaWorkspace ws;
    try {
      for (std::size_t s = next.fetch_add(1); s < segs.size(); s = next.fetch_add(1)) {
        factorizer.factor_range(segs[s].lo, segs[s].hi, facs);
        const auto len = static_cast<std::size_t>(segs[s].hi - segs[s].lo + 1);
        for (std::size_t i = 0; i < len; ++i) visit(partials[s], facs[i], ws);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(segs.size());
    }
  };

  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), segs.size()));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return partials;
}

void check_range(const ScanConfig& config, std::uint64_t min_x) {
  if (config.x < min_x) {
    throw ConfigError("scan requires x >= " + std::to_string(min_x));
  }
  if (config.x > config.max_x) {
    throw CapacityError("x = " + std::to_string(config.x) + " exceeds scan capacity " +
                        std::to_string(config.max_x));
  }
  if (config.segment_size == 0) throw ConfigError("segment_size must be >= 1");
  if (!(config.a > 0.0)) throw ConfigError("envelope constant a must be > 0");
}

Factorization prefix_factorization(const Factorization& f, std::size_t first, std::size_t last) {
  Factorization out;
  for (std::size_t i = first; i < last; ++i) {
    out.factors.push_back({f.factors[i].prime, 1});
    out.n *= f.factors[i].prime;
  }
  return out;
}

std::vector<Quantile> quantiles_of(const std::map<std::uint32_t, std::uint64_t>& hist,
                                   std::uint64_t overflow) {
  std::uint64_t total = overflow;
  for (const auto& [v, c] : hist) total += c;
  std::vector<Quantile> out;
  if (total == 0) return out;
  for (double level : {0.5, 0.9, 0.99, 0.999, 1.0}) {
    const auto need = static_cast<std::uint64_t>(std::ceil(level * static_cast<double>(total)));
    std::uint64_t seen = 0;
    std::uint32_t value = kHistogramCap + 1;
    for (const auto& [v, c] : hist) {
      seen += c;
      if (seen >= need) {
        value = v;
        break;
      }
    }
    out.push_back({level, value});
  }
  return out;
}

}  // namespace

unsigned xi_of(const ScanConfig& config) {
  if (config.xi) return *config.xi;
  const double x = static_cast<double>(config.x);
  const double lll = std::log(loglog(x));
  if (!(lll >= 1.0)) return 1;  // covers NaN for small x
  return static_cast<unsigned>(std::floor(lll));
}

unsigned k_cap_of(const ScanConfig& config) {
  const double ll = loglog(static_cast<double>(config.x));
  if (!(ll > 0.0)) return 0;
  return static_cast<unsigned>(std::ceil((2.0 + config.epsilon) * ll));
}

unsigned q_of_k(unsigned k) { return static_cast<unsigned>(std::ceil(2.0 * std::sqrt(k))); }

std::map<std::string, double> bound_ratios(double S, double x, double y, double a) {
  std::map<std::string, double> out;
  const double lx = std::log(x);
  const double llx = std::log(lx);
  const double lllx = std::log(llx);
  auto put = [&](const char* name, double envelope) {
    if (std::isfinite(envelope) && envelope > 0.0) out[name] = S / envelope;
  };
  // The square-root envelope uses sqrt(max(0, loglog x)) so small x stay finite.
  put("sqrt_loglog", x * std::pow(lx, 2 * y - 2) * std::exp(a * std::sqrt(std::max(0.0, llx))));
  if (y <= 0.5) put("y_at_most_half", x * std::pow(lx, y - 1) * std::pow(llx, y == 0.5 ? 1 : 0));
  const double high = 1.0 + std::sqrt(2.0) / 2.0;
  if (y >= high) put("y_at_least_high", x * std::pow(lx, 2 * y - 2) * std::pow(llx, y == high ? 1 : 0));
  if (y < 1.0) {
    put("y_below_one",
        x * std::pow(lx, y - 1) * std::exp(4.0 * std::log(3.0) / (1.0 - y) * lllx * lllx));
  }
  return out;
}

ScanReport scan(const ScanConfig& config) {
  check_range(config, 2);
  const unsigned xi = xi_of(config);
  const unsigned k_cap = k_cap_of(config);
  const bool has_minus = k_cap >= xi;

  std::vector<std::uint64_t> cuts = config.checkpoints;
  std::sort(cuts.begin(), cuts.end());
  for (std::uint64_t c : cuts) {
    if (c < 1 || c > config.x) throw ConfigError("checkpoints must lie in [1, x]");
  }
  const auto segs = plan_segments(1, config.x, config.segment_size, cuts);

  struct Partial {
    FixedPointSum S, D, D_minus;
    std::vector<std::uint64_t> hist;
    std::uint64_t overflow = 0;
    std::vector<std::uint64_t> exceed;
    std::uint64_t normal_total = 0;
  };
  Partial prototype;
  prototype.exceed.assign(config.gammas.size(), 0);

  const WeightSpec& w = config.weight;
  const auto& gammas = config.gammas;
  auto partials = run_segments(
      segs, config.workers, prototype,
      [&](Partial& part, const Factorization& f, DeltaWorkspace& ws) {
        const std::uint32_t delta = ws.delta(f);
        const double g = eval(w, f);
        part.S.add(g * delta);
        if (f.squarefree()) {
          const double term = g * delta / static_cast<double>(f.n);
          part.D.add(term);
          if (has_minus && !in_A_x(f, xi, k_cap)) part.D_minus.add(term);
        }
        if (delta > kHistogramCap) {
          ++part.overflow;
        } else {
          if (part.hist.size() <= delta) part.hist.resize(delta + 1, 0);
          ++part.hist[delta];
        }
        if (!gammas.empty() && f.n > kNormalOrderStart) {
          ++part.normal_total;
          const double ll = loglog(static_cast<double>(f.n));
          for (std::size_t i = 0; i < gammas.size(); ++i) {
            if (delta > std::pow(ll, gammas[i])) ++part.exceed[i];
          }
        }
      });

  ScanReport report;
  report.x = config.x;
  report.weight_name = w.name;
  report.y = w.y;
  report.A = w.A;
  report.a = config.a;
  report.epsilon = config.epsilon;
  report.xi = xi;
  report.k_cap = k_cap;
  report.q_of_k_cap = q_of_k(k_cap);

  FixedPointSum S, D, D_minus;
  std::vector<std::uint64_t> exceed(gammas.size(), 0);
  std::uint64_t normal_total = 0;
  auto cut = cuts.begin();
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const Partial& p = partials[s];
    S += p.S;
    D += p.D;
    D_minus += p.D_minus;
    for (std::uint32_t v = 0; v < p.hist.size(); ++v) {
      if (p.hist[v] > 0) report.delta_histogram[v] += p.hist[v];
    }
    report.histogram_overflow += p.overflow;
    for (std::size_t i = 0; i < exceed.size(); ++i) exceed[i] += p.exceed[i];
    normal_total += p.normal_total;
    while (cut != cuts.end() && *cut == segs[s].hi) {
      const double xs = static_cast<double>(*cut);
      report.checkpoints.push_back({*cut, S.value(), bound_ratios(S.value(), xs, w.y, config.a)});
      ++cut;
    }
  }
  report.S = S.value();
  report.D = D.value();
  report.D_minus = D_minus.value();
  report.quantiles = quantiles_of(report.delta_histogram, report.histogram_overflow);
  report.bound_ratios = bound_ratios(report.S, static_cast<double>(config.x), w.y, config.a);
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const double frac =
        normal_total == 0 ? 0.0 : static_cast<double>(exceed[i]) / static_cast<double>(normal_total);
    report.normal_order.push_back({gammas[i], exceed[i], normal_total, frac});
  }
  return report;
}

std::vector<CheckpointRow> bound_ratio_curve(const ScanConfig& config,
                                             std::span<const std::uint64_t> checkpoints) {
  if (checkpoints.empty()) return {};
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw ConfigError("checkpoints must be ascending");
  }
  ScanConfig c = config;
  c.x = checkpoints.back();
  c.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  c.gammas.clear();
  return scan(c).checkpoints;
}

double truncated_harmonic(const ScanConfig& config, unsigned k) {
  check_range(config, 1);
  if (k == 0) throw ConfigError("truncated_harmonic requires k >= 1");
  const auto segs = plan_segments(1, config.x, config.segment_size, {});
  const WeightSpec& w = config.weight;
  auto partials = run_segments(segs, config.workers, FixedPointSum{},
                               [&](FixedPointSum& part, const Factorization& f, DeltaWorkspace& ws) {
                                 if (!f.squarefree()) return;
                                 const std::size_t take = std::min<std::size_t>(k, f.factors.size());
                                 const std::uint32_t delta = ws.delta(prefix_factorization(f, 0, take));
                                 part.add(eval(w, f) * delta / static_cast<double>(f.n));
                               });
  FixedPointSum total;
  for (const auto& p : partials) total += p;
  return total.value();
}

TailMass omega_tail_mass(const ScanConfig& config, double y_param) {
  check_range(config, 2);
  if (!(y_param >= 1.0)) throw ConfigError("omega_tail_mass requires y >= 1");
  const double threshold = 2.0 * y_param * loglog(static_cast<double>(config.x));
  const auto segs = plan_segments(1, config.x, config.segment_size, {});
  const WeightSpec& w = config.weight;
  struct Partial {
    FixedPointSum tail, S;
  };
  auto partials = run_segments(segs, config.workers, Partial{},
                               [&](Partial& part, const Factorization& f, DeltaWorkspace& ws) {
                                 const double term = eval(w, f) * ws.delta(f);
                                 part.S.add(term);
                                 if (f.n >= 2 && static_cast<double>(f.factors.size()) > threshold) {
                                   part.tail.add(term);
                                 }
                               });
  FixedPointSum tail, S;
  for (const auto& p : partials) {
    tail += p.tail;
    S += p.S;
  }
  TailMass out{threshold, tail.value(), S.value(), 0.0};
  out.ratio = out.S > 0 ? out.tail / out.S : 0.0;
  return out;
}

std::vector<NormalOrderRow> normal_order_report(const ScanConfig& config,
                                                std::span<const double> gammas) {
  if (config.x <= kNormalOrderStart) {
    throw ConfigError("normal-order statistics need x >= 16: loglog n <= 1 below e^e");
  }
  check_range(config, kNormalOrderStart + 1);
  const auto segs = plan_segments(kNormalOrderStart + 1, config.x, config.segment_size, {});
  std::vector<double> gs(gammas.begin(), gammas.end());
  auto partials = run_segments(segs, config.workers, std::vector<std::uint64_t>(gs.size(), 0),
                               [&](std::vector<std::uint64_t>& part, const Factorization& f,
                                   DeltaWorkspace& ws) {
                                 const std::uint32_t delta = ws.delta(f);
                                 const double ll = loglog(static_cast<double>(f.n));
                                 for (std::size_t i = 0; i < gs.size(); ++i) {
                                   if (delta > std::pow(ll, gs[i])) ++part[i];
                                 }
                               });
  const std::uint64_t total = config.x - kNormalOrderStart;
  std::vector<NormalOrderRow> rows;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    std::uint64_t exceed = 0;
    for (const auto& p : partials) exceed += p[i];
    rows.push_back({gs[i], exceed, total, static_cast<double>(exceed) / static_cast<double>(total)});
  }
  return rows;
}

void validate_induction_params(const InductionParams& p) {
  const double log2 = std::log(2.0);
  std::vector<std::string> failed;
  if (!(p.lambda > 1.0 && p.lambda < 2.0)) failed.push_back("1 < lambda < 2");
  if (!(p.delta * log2 / p.lambda < p.gamma)) failed.push_back("delta log2 / lambda < gamma");
  if (!(p.gamma < 1.0)) failed.push_back("gamma < 1");
  if (!(1.0 < p.delta)) failed.push_back("1 < delta");
  if (!(p.delta < p.lambda * (p.gamma - 1.0) + 1.0 / log2)) {
    failed.push_back("delta < lambda (gamma - 1) + 1/log 2");
  }
  if (!(p.e1 > 0.0 && p.e1 < std::exp(1.0))) failed.push_back("0 < e1 < e");
  if (!(p.alpha > 0.0)) failed.push_back("alpha > 0");
  if (!(p.r > 1.0 / p.alpha)) failed.push_back("r > 1/alpha");
  if (!failed.empty()) {
    std::string msg = "induction parameters violate:";
    for (const auto& f : failed) msg += " [" + f + "]";
    throw ConfigError(msg);
  }
}

InductionConstants induction_constants(const InductionParams& p, double exponent_c) {
  const double tail = std::exp(p.alpha / p.lambda - exponent_c);
  return {exponent_c, std::pow(2.0, 1.0 - p.delta + p.delta / p.lambda) * tail,
          std::pow(2.0, p.delta / p.lambda) * tail};
}

unsigned induction_top_index(const Factorization& f, double x, unsigned xi) {
  const double bound = loglog(x) - xi;
  unsigned k = 0;
  while (k < f.factors.size() && loglog(static_cast<double>(f.factors[k].prime)) < bound) ++k;
  return k;
}

std::uint64_t induction_kernel(const Factorization& f, unsigned k, unsigned top, unsigned xi) {
  const unsigned last = std::min(k, top);
  std::uint64_t v = 1;
  for (unsigned j = xi + 1; j <= last; ++j) v *= f.factors[j - 1].prime;
  return v;
}

PpxReport ppx_induction_check(const ScanConfig& config, const InductionParams& params,
                              std::span<const std::uint64_t> sample) {
  validate_induction_params(params);
  PpxReport report;
  report.params = params;
  report.constants = induction_constants(params, params.gamma);
  report.x = config.x;
  report.xi = xi_of(config);
  const unsigned xi = report.xi;
  const double x = static_cast<double>(config.x);
  constexpr double kSlack = 1e-12;

  std::map<unsigned, PpxRow> rows;
  for (std::uint64_t n : sample) {
    const Factorization f = factorize(n);
    if (!f.squarefree()) {
      throw ConfigError("induction sample must be squarefree (got " + std::to_string(n) + ")");
    }
    ++report.sampled;
    const unsigned top = induction_top_index(f, x, xi);
    if (top <= xi) {
      ++report.skipped;
      continue;
    }
    // moments[k][q] = M_q(n_k) for xi < k <= top and q up to floor(lambda (k+1)).
    auto moments_of = [&](unsigned k, unsigned qmax) {
      const StepFunction sf = profile(LogDivisorProfile(divisors(prefix_factorization(f, xi, k))));
      std::vector<double> m(qmax + 1, 0.0);
      for (unsigned q = 1; q <= qmax; ++q) m[q] = sf.power_integral(q);
      return m;
    };
    for (unsigned k = xi + 1; k <= top; ++k) {
      PpxRow& row = rows[k];
      row.k = k;
      ++row.samples;
      const auto q_k = static_cast<unsigned>(std::floor(params.lambda * k));
      const auto q_next = static_cast<unsigned>(std::floor(params.lambda * (k + 1)));
      const auto m = moments_of(k, std::max(q_k, q_next));

      bool moment_ok = true;
      for (unsigned q = 1; q <= q_k; ++q) {
        const double bound = std::pow(2.0, params.delta * k) * std::pow(std::tgamma(q + 1.0), params.gamma);
        if (m[q] > bound * (1 + kSlack)) moment_ok = false;
      }
      if (!moment_ok) ++row.moment_bound_violations;

      if (k < top) {
        ++row.recursion_checked;
        const auto m_next = moments_of(k + 1, q_next);
        bool rec_ok = true;
        for (unsigned q = 1; q <= q_next; ++q) {
          double cross = 0.0;
          for (unsigned j = 1; j < q; ++j) cross += binomial(q, j) * m[j] * m[q - j];
          const double rhs = 2.0 * m[q] + std::pow(params.e1, -static_cast<double>(k)) * cross;
          if (m_next[q] > rhs * (1 + kSlack)) rec_ok = false;
        }
        if (!rec_ok) ++row.recursion_violations;
      }

      const std::uint32_t delta_k =
          delta_max(LogDivisorProfile(divisors(prefix_factorization(f, xi, k))));
      const double rhs = params.r + std::exp(params.alpha * k / q_k) * std::pow(m[q_k], 1.0 / q_k);
      if (delta_k > rhs) ++row.delta_bound_violations;
    }
  }
  for (auto& [k, row] : rows) {
    const auto s = static_cast<double>(row.samples);
    row.moment_bound_fraction = row.moment_bound_violations / s;
    row.delta_bound_fraction = row.delta_bound_violations / s;
    row.recursion_fraction = row.recursion_checked == 0
                                 ? 0.0
                                 : static_cast<double>(row.recursion_violations) /
                                       static_cast<double>(row.recursion_checked);
    report.rows.push_back(row);
  }
  return report;
}

TailTransferReport tail_transfer_check(const ScanConfig& config,
                                       std::span<const std::uint64_t> sample) {
  const unsigned xi = xi_of(config);
  const double x = static_cast<double>(config.x);
  TailTransferReport report;
  DeltaWorkspace ws;
  for (std::uint64_t n : sample) {
    if (n == 0) throw ConfigError("sample entries must be positive");
    const Factorization f = factorize(n);
    const unsigned top = induction_top_index(f, x, xi);
    const std::size_t first = std::min<std::size_t>(xi, top);
    const Factorization kernel = prefix_factorization(f, first, top);
    TailTransferRow row{};
    row.n = n;
    row.kernel = kernel.n;
    row.delta_n = ws.delta(f);
    row.delta_kernel = ws.delta(kernel);
    row.omega_rest = classical(f).Omega - static_cast<unsigned>(kernel.factors.size());
    const double bound = static_cast<double>(row.delta_kernel) * std::ldexp(1.0, static_cast<int>(row.omega_rest));
    row.holds = row.delta_n <= bound;
    if (!row.holds) ++report.violations;
    report.max_ratio = std::max(report.max_ratio, row.delta_n / bound);
    report.rows.push_back(row);
  }
  return report;
}

std::vector<std::uint64_t> seeded_sample(std::size_t count, std::uint64_t lo, std::uint64_t hi,
                                         std::uint64_t seed) {
  if (lo == 0 || lo > hi) throw ConfigError("sample range must satisfy 1 <= lo <= hi");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
  std::vector<std::uint64_t> out(count);
  for (auto& v : out) v = dist(rng);
  return out;
}

std::vector<std::uint64_t> seeded_squarefree_sample(std::size_t count, std::uint64_t lo,
                                                    std::uint64_t hi, std::uint64_t seed,
                                                    unsigned min_omega) {
  if (lo == 0 || lo > hi) throw ConfigError("sample range must satisfy 1 <= lo <= hi");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
  std::vector<std::uint64_t> out;
  const std::size_t max_draws = 1000 * std::max<std::size_t>(count, 1);
  for (std::size_t draws = 0; out.size() < count; ++draws) {
    if (draws == max_draws) {
      throw ConfigError("could not draw enough squarefree integers with omega >= " +
                        std::to_string(min_omega));
    }
    const std::uint64_t n = dist(rng);
    const Factorization f = factorize(n);
    if (f.squarefree() && f.factors.size() >= min_omega) out.push_back(n);
  }
  return out;
}

}  // namespace hooley
