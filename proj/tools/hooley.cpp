// hooley: command-line front end for the Delta-function toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or configuration,
// 3 capacity, 4 I/O.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hooley/aggregates.hpp"
#include "hooley/arith.hpp"
#include "hooley/delta.hpp"
#include "hooley/error.hpp"
#include "hooley/report_io.hpp"
#include "hooley/verify.hpp"
#include "hooley/waring.hpp"

namespace {

using nlohmann::json;
using namespace hooley;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCapacity = 3, kIo = 4 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format;  // empty: the subcommand's default
  std::string out;
  unsigned workers = 0;
  std::uint64_t seed = 1;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
};

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open output file " + path);
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

// Replaces every "@path" argument by the whitespace-separated tokens of that file.
std::vector<std::string> expand_flag_files(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.size() > 1 && a[0] == '@') {
      std::ifstream f(a.substr(1));
      if (!f) throw IoError("cannot read flags file " + a.substr(1));
      std::string tok;
      while (f >> tok) args.push_back(tok);
    } else {
      args.push_back(a);
    }
  }
  return args;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  auto to_u64 = [&](const std::string& t) -> std::uint64_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("not a positive integer: '" + t + "'");
    }
    const std::uint64_t v = std::stoull(t);
    if (v == 0) throw ConfigError("integers must be positive");
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const auto v = to_u64(s);
    return {v, v};
  }
  const auto lo = to_u64(s.substr(0, dots));
  const auto hi = to_u64(s.substr(dots + 2));
  if (lo > hi) throw ConfigError("empty range " + s);
  return {lo, hi};
}

Common resolve_format(Common c, const char* fallback) {
  if (c.format.empty()) c.format = fallback;
  if (c.format != "csv" && c.format != "json") throw ConfigError("--format must be csv or json");
  return c;
}

int cmd_delta(const Common& common, const std::string& range) {
  const Common c = resolve_format(common, "csv");
  const auto [lo, hi] = parse_range(range);
  Output out(c.out);
  json rows = json::array();
  if (c.format == "csv") out.stream() << "n,delta,tau,omega\n";
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const Factorization f = factorize(n);
    const LogDivisorProfile p(divisors(f));
    const auto cl = classical(f);
    const std::uint32_t d = delta_max(p);
    if (c.format == "csv") {
      out.stream() << n << ',' << d << ',' << cl.tau << ',' << cl.omega << '\n';
    } else {
      rows.push_back({{"n", n}, {"delta", d}, {"tau", cl.tau}, {"omega", cl.omega}});
    }
    if (n == hi) break;
  }
  if (c.format == "json") out.stream() << rows.dump(2) << '\n';
  out.finish();
  return kOk;
}

int cmd_moments(const Common& common, std::uint64_t n, unsigned qmax, double oracle_cap) {
  const Common c = resolve_format(common, "csv");
  if (n == 0) throw ConfigError("n must be positive");
  if (qmax == 0) throw ConfigError("qmax must be >= 1");
  const auto p = LogDivisorProfile::of(n);
  const double L = support_measure(p);
  Output out(c.out);
  json rows = json::array();
  if (c.format == "csv") out.stream() << "q,M_q,M_q_star,L\n";
  for (unsigned q = 1; q <= qmax; ++q) {
    const double m = moment(p, q).value;
    std::optional<std::uint64_t> star;
    if (std::pow(static_cast<double>(p.tau()), q) <= oracle_cap) star = mstar(p, q, oracle_cap);
    if (c.format == "csv") {
      out.stream() << q << ',' << format_real(m) << ',';
      if (star) out.stream() << *star;
      out.stream() << ',' << format_real(L) << '\n';
    } else {
      json row = {{"q", q}, {"M_q", m}, {"L", L}};
      row["M_q_star"] = star ? json(*star) : json(nullptr);
      rows.push_back(row);
    }
  }
  if (c.format == "json") out.stream() << json{{"n", n}, {"moments", rows}}.dump(2) << '\n';
  out.finish();
  return kOk;
}

struct ScanFlags {
  std::uint64_t x = 0;
  std::string weight = "unit";
  double y = 1.0;
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> gammas;
  std::uint64_t segment = 100'000;
  double a = kDefaultEnvelopeConstant;
  double epsilon = 0.1;
  std::uint64_t max_x = 10'000'000'000ULL;
  std::string curve_out;
};

ScanConfig make_config(const Common& c, const ScanFlags& f) {
  ScanConfig config;
  config.x = f.x;
  config.weight = weights::by_name(f.weight, f.y);
  config.segment_size = f.segment;
  config.a = f.a;
  config.epsilon = f.epsilon;
  config.workers = c.workers;
  config.max_x = f.max_x;
  return config;
}

int cmd_scan(const Common& common, const ScanFlags& f) {
  const Common c = resolve_format(common, "json");
  ScanConfig config = make_config(c, f);
  config.checkpoints = f.checkpoints;
  std::sort(config.checkpoints.begin(), config.checkpoints.end());
  config.gammas = f.gammas;
  const ScanReport report = scan(config);

  Output out(c.out);
  if (c.format == "json") {
    out.stream() << to_json(report).dump(2) << '\n';
  } else {
    write_histogram_csv(out.stream(), report);
  }
  out.finish();
  if (!f.curve_out.empty()) {
    std::ostringstream csv;
    write_checkpoints_csv(csv, report.checkpoints);
    write_text_file(f.curve_out, csv.str());
  }
  return kOk;
}

int cmd_normal(const Common& common, const ScanFlags& f) {
  const Common c = resolve_format(common, "csv");
  if (f.x < 16) {
    throw ConfigError("normal needs x >= 16: loglog n <= 1 for n <= e^e, so thresholds degenerate");
  }
  const ScanConfig config = make_config(c, f);
  const auto rows = normal_order_report(config, f.gammas.empty() ? kDefaultGammas : f.gammas);
  Output out(c.out);
  if (c.format == "csv") {
    write_normal_order_csv(out.stream(), rows);
  } else {
    json j = json::array();
    for (const auto& r : rows) {
      j.push_back({{"gamma", r.gamma}, {"exceed", r.exceed}, {"total", r.total},
                   {"fraction", r.fraction}});
    }
    out.stream() << json{{"x", f.x}, {"log_convention", kLogConvention}, {"rows", j}}.dump(2)
                 << '\n';
  }
  out.finish();
  return kOk;
}

int cmd_verify(const Common& c, const std::string& suite, std::uint64_t max) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = verify::suite_names();
  } else {
    suites = {suite};
  }
  json results = json::array();
  bool ok = true;
  for (const auto& s : suites) {
    const verify::Result r = verify::run(s, suite == "all" ? 0 : max, c.seed);
    ok = ok && r.passed();
    results.push_back({{"suite", r.suite},
                       {"max", r.max},
                       {"checks", r.checks},
                       {"failures", r.failure_count},
                       {"passed", r.passed()},
                       {"failure_samples", r.failures}});
  }
  Output out(c.out);
  out.stream() << json{{"passed", ok}, {"suites", results}}.dump(2) << '\n';
  out.finish();
  return ok ? kOk : kVerifyFailed;
}

struct WaringFlags {
  std::vector<std::uint64_t> c{1, 1, 1};
  std::vector<unsigned> ell{2, 4, 4};
  std::uint64_t x = 1000;
  std::vector<std::uint64_t> checkpoints;
  bool strict = false;
  bool positive = false;
  double a = kDefaultEnvelopeConstant;
  double cap = kDefaultTupleCap;
  std::string reps_out;
};

int cmd_waring(const Common& flags, const WaringFlags& f) {
  const Common common = resolve_format(flags, "json");
  WaringForm form;
  if (f.c.empty()) throw ConfigError("--c needs at least two coefficients");
  form.k = static_cast<unsigned>(f.c.size() - 1);
  form.c = f.c;
  form.ell = f.ell;
  form.allow_zero = !f.positive;
  validate(form, f.strict);

  std::vector<std::uint64_t> cps = f.checkpoints;
  cps.push_back(f.x);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  const unsigned workers = common.workers == 0 ? 1 : common.workers;
  const auto rows = bound_curve(form, cps, f.a, workers, f.cap);
  const auto& last = *std::find_if(rows.begin(), rows.end(),
                                   [&](const WaringRow& r) { return r.x == f.x; });

  if (!f.reps_out.empty()) {
    std::ostringstream csv;
    write_rep_counts_csv(csv, enumerate(form, f.x, workers, f.cap));
    write_text_file(f.reps_out, csv.str());
  }

  Output out(common.out);
  if (common.format == "csv") {
    write_waring_rows_csv(out.stream(), rows);
  } else {
    json curve = json::array();
    for (const auto& r : rows) {
      curve.push_back({{"x", r.x}, {"N", r.N}, {"V", r.V}, {"N_ratio", r.N_ratio},
                       {"V_ratio", r.V_ratio}});
    }
    out.stream() << json{{"c", form.c},
                         {"ell", form.ell},
                         {"allow_zero", form.allow_zero},
                         {"strict", f.strict},
                         {"a", f.a},
                         {"x", f.x},
                         {"N", last.N},
                         {"V", last.V},
                         {"N_ratio", last.N_ratio},
                         {"V_ratio", last.V_ratio},
                         {"pair_convention", "ordered pairs, m0 != n0"},
                         {"V_convention", "representable 1 <= n <= x"},
                         {"log_convention", kLogConvention},
                         {"curve", curve}}
                            .dump(2)
                     << '\n';
  }
  out.finish();
  return kOk;
}

int cmd_ppx(const Common& c, const ScanFlags& f, const InductionParams& params,
            std::size_t samples, unsigned min_omega) {
  ScanConfig config = make_config(c, f);
  const auto sample = seeded_squarefree_sample(samples, 2, f.x, c.seed, min_omega);
  json j = to_json(ppx_induction_check(config, params, sample));
  j["seed"] = c.seed;
  Output out(c.out);
  out.stream() << j.dump(2) << '\n';
  out.finish();
  return kOk;
}

int cmd_tail(const Common& c, const ScanFlags& f, std::size_t samples, bool rows) {
  ScanConfig config = make_config(c, f);
  const auto sample = seeded_sample(samples, 1, f.x, c.seed);
  const auto report = tail_transfer_check(config, sample);
  json j = to_json(report, rows);
  j["seed"] = c.seed;
  j["x"] = f.x;
  Output out(c.out);
  out.stream() << j.dump(2) << '\n';
  out.finish();
  return report.violations == 0 ? kOk : kVerifyFailed;
}

void add_common(CLI::App* sub, Common& c, bool with_format) {
  if (with_format) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  }
  sub->add_option("--out", c.out, "Output path (default stdout)");
  sub->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
  sub->add_option("--seed", c.seed, "Seed for sampled reports");
}

void add_scan_flags(CLI::App* sub, ScanFlags& f) {
  sub->add_option("x", f.x, "Range limit")->required();
  sub->add_option("--weight", f.weight, "unit | omega_power | squarefree_unit");
  sub->add_option("--y", f.y, "Parameter y of omega_power");
  sub->add_option("--segment", f.segment, "Segment size");
  sub->add_option("--a", f.a, "Envelope constant a");
  sub->add_option("--epsilon", f.epsilon, "Slack in K_x = ceil((2+epsilon) loglog x)");
  sub->add_option("--max-x", f.max_x, "Scan capacity");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Erdos-Hooley Delta-function toolkit"};
  app.require_subcommand(1);

  Common common;
  std::string range;
  std::uint64_t moments_n = 1;
  unsigned qmax = 1;
  double oracle_cap = kDefaultOracleCap;
  ScanFlags scan_flags;
  std::string suite;
  std::uint64_t verify_max = 0;
  WaringFlags waring_flags;
  InductionParams params;
  std::size_t samples = 1000;
  unsigned min_omega = 3;
  bool tail_rows = false;

  auto* delta = app.add_subcommand("delta", "Delta(n), tau(n), omega(n) for n or a range a..b");
  delta->add_option("n", range, "n or a..b")->required();
  add_common(delta, common, true);

  auto* moments = app.add_subcommand("moments", "M_q(n), M*_q(n), L(n) for q <= qmax");
  moments->add_option("n", moments_n)->required();
  moments->add_option("qmax", qmax)->required();
  moments->add_option("--oracle-cap", oracle_cap, "Tuple budget for the M* column");
  add_common(moments, common, true);

  auto* scan_cmd = app.add_subcommand("scan", "Weighted Delta scan of 1 <= n <= x");
  add_scan_flags(scan_cmd, scan_flags);
  scan_cmd->add_option("--checkpoints", scan_flags.checkpoints, "Comma-separated x values")
      ->delimiter(',');
  scan_cmd->add_option("--gammas", scan_flags.gammas, "Normal-order exponents")->delimiter(',');
  scan_cmd->add_option("--curve-out", scan_flags.curve_out, "Bound-ratio CSV path");
  add_common(scan_cmd, common, true);

  auto* normal = app.add_subcommand("normal", "Exceedance fractions of (loglog n)^gamma");
  add_scan_flags(normal, scan_flags);
  normal->add_option("--gammas", scan_flags.gammas, "Comma-separated exponents")->delimiter(',');
  add_common(normal, common, true);

  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite (or 'all')");
  verify_cmd->add_option("suite", suite)->required();
  verify_cmd->add_option("--max", verify_max, "Range bound (default per suite)");
  add_common(verify_cmd, common, false);

  auto* waring_cmd = app.add_subcommand("waring", "N(x), V(x) for c_0 n_0^2 + sum c_j n_j^l_j");
  waring_cmd->add_option("--c", waring_flags.c, "Coefficients c_0..c_k")->delimiter(',');
  waring_cmd->add_option("--ell", waring_flags.ell, "Exponents l_0..l_k")->delimiter(',');
  waring_cmd->add_option("--x", waring_flags.x, "Range limit");
  waring_cmd->add_option("--checkpoints", waring_flags.checkpoints)->delimiter(',');
  waring_cmd->add_flag("--strict", waring_flags.strict, "Require sum_{j>=1} 1/l_j = 1/2");
  waring_cmd->add_flag("--positive", waring_flags.positive, "Coordinates >= 1 instead of >= 0");
  waring_cmd->add_option("--a", waring_flags.a, "Envelope constant a");
  waring_cmd->add_option("--cap", waring_flags.cap, "Tuple capacity");
  waring_cmd->add_option("--reps-out", waring_flags.reps_out, "value,count CSV path");
  add_common(waring_cmd, common, true);

  auto* ppx = app.add_subcommand("ppx", "Frequency check of the normal-order induction");
  add_scan_flags(ppx, scan_flags);
  ppx->add_option("--lambda", params.lambda);
  ppx->add_option("--gamma", params.gamma);
  ppx->add_option("--delta", params.delta);
  ppx->add_option("--e1", params.e1);
  ppx->add_option("--alpha", params.alpha);
  ppx->add_option("--r", params.r);
  ppx->add_option("--samples", samples, "Number of squarefree samples");
  ppx->add_option("--min-omega", min_omega, "Minimum omega(n) of samples");
  add_common(ppx, common, false);

  auto* tail = app.add_subcommand("tail", "Check Delta(n) <= Delta(n_K) 2^Omega(n/n_K)");
  add_scan_flags(tail, scan_flags);
  tail->add_option("--samples", samples, "Number of sampled integers");
  tail->add_flag("--rows", tail_rows, "Include per-n rows");
  add_common(tail, common, false);

  try {
    std::vector<std::string> args = expand_flag_files(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }

  try {
    if (*delta) return cmd_delta(common, range);
    if (*moments) return cmd_moments(common, moments_n, qmax, oracle_cap);
    if (*scan_cmd) return cmd_scan(common, scan_flags);
    if (*normal) return cmd_normal(common, scan_flags);
    if (*verify_cmd) return cmd_verify(common, suite, verify_max);
    if (*waring_cmd) return cmd_waring(common, waring_flags);
    if (*ppx) return cmd_ppx(common, scan_flags, params, samples, min_omega);
    if (*tail) return cmd_tail(common, scan_flags, samples, tail_rows);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const ConfigError& e) {
    std::cerr << "configuration: " << e.what() << '\n';
    return kUsage;
  } catch (const ClassViolation& e) {
    std::cerr << "configuration: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
