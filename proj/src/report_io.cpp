#include "hooley/report_io.hpp"

#include <cstdio>

namespace hooley {

using nlohmann::json;

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace {

json checkpoint_json(const CheckpointRow& c) {
  return {{"x", c.x}, {"S", c.S}, {"ratios", c.ratios}};
}

}  // namespace

json to_json(const ScanReport& r) {
  json hist = json::array();
  for (const auto& [v, c] : r.delta_histogram) hist.push_back({v, c});
  json quantiles = json::array();
  for (const auto& q : r.quantiles) quantiles.push_back({{"level", q.level}, {"value", q.value}});
  json checkpoints = json::array();
  for (const auto& c : r.checkpoints) checkpoints.push_back(checkpoint_json(c));
  json normal = json::array();
  for (const auto& n : r.normal_order) {
    normal.push_back({{"gamma", n.gamma}, {"exceed", n.exceed}, {"total", n.total},
                      {"fraction", n.fraction}});
  }
  return {
      {"log_convention", kLogConvention},
      {"x", r.x},
      {"weight", {{"name", r.weight_name}, {"y", r.y}, {"A", r.A}}},
      {"a", r.a},
      {"epsilon", r.epsilon},
      {"xi", r.xi},
      {"K_x", r.k_cap},
      {"q_of_K_x", r.q_of_k_cap},
      {"S", r.S},
      {"D", r.D},
      {"D_minus", r.D_minus},
      {"delta_histogram", hist},
      {"histogram_overflow", r.histogram_overflow},
      {"quantiles", quantiles},
      {"bound_ratios", r.bound_ratios},
      {"checkpoints", checkpoints},
      {"normal_order", normal},
  };
}

ScanReport scan_report_from_json(const json& j) {
  ScanReport r;
  r.x = j.at("x").get<std::uint64_t>();
  r.weight_name = j.at("weight").at("name").get<std::string>();
  r.y = j.at("weight").at("y").get<double>();
  r.A = j.at("weight").at("A").get<double>();
  r.a = j.at("a").get<double>();
  r.epsilon = j.at("epsilon").get<double>();
  r.xi = j.at("xi").get<unsigned>();
  r.k_cap = j.at("K_x").get<unsigned>();
  r.q_of_k_cap = j.at("q_of_K_x").get<unsigned>();
  r.S = j.at("S").get<double>();
  r.D = j.at("D").get<double>();
  r.D_minus = j.at("D_minus").get<double>();
  for (const auto& e : j.at("delta_histogram")) {
    r.delta_histogram[e.at(0).get<std::uint32_t>()] = e.at(1).get<std::uint64_t>();
  }
  r.histogram_overflow = j.at("histogram_overflow").get<std::uint64_t>();
  for (const auto& q : j.at("quantiles")) {
    r.quantiles.push_back({q.at("level").get<double>(), q.at("value").get<std::uint32_t>()});
  }
  r.bound_ratios = j.at("bound_ratios").get<std::map<std::string, double>>();
  for (const auto& c : j.at("checkpoints")) {
    r.checkpoints.push_back({c.at("x").get<std::uint64_t>(), c.at("S").get<double>(),
                             c.at("ratios").get<std::map<std::string, double>>()});
  }
  for (const auto& n : j.at("normal_order")) {
    r.normal_order.push_back({n.at("gamma").get<double>(), n.at("exceed").get<std::uint64_t>(),
                              n.at("total").get<std::uint64_t>(),
                              n.at("fraction").get<double>()});
  }
  return r;
}

void write_histogram_csv(std::ostream& out, const ScanReport& r) {
  out << "delta,count\n";
  for (const auto& [v, c] : r.delta_histogram) out << v << ',' << c << '\n';
  if (r.histogram_overflow > 0) out << "overflow," << r.histogram_overflow << '\n';
}

void write_checkpoints_csv(std::ostream& out, const std::vector<CheckpointRow>& rows) {
  // Column set is the union of the ratio names over all rows.
  std::map<std::string, int> names;
  for (const auto& row : rows) {
    for (const auto& [name, v] : row.ratios) names[name] = 0;
  }
  out << "x,S";
  for (const auto& [name, _] : names) out << ",ratio_" << name;
  out << '\n';
  for (const auto& row : rows) {
    out << row.x << ',' << format_real(row.S);
    for (const auto& [name, _] : names) {
      out << ',';
      if (auto it = row.ratios.find(name); it != row.ratios.end()) out << format_real(it->second);
    }
    out << '\n';
  }
}

void write_normal_order_csv(std::ostream& out, const std::vector<NormalOrderRow>& rows) {
  out << "gamma,exceed,total,fraction\n";
  for (const auto& r : rows) {
    out << format_real(r.gamma) << ',' << r.exceed << ',' << r.total << ','
        << format_real(r.fraction) << '\n';
  }
}

json to_json(const PpxReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"k", row.k},
                    {"samples", row.samples},
                    {"moment_bound_violations", row.moment_bound_violations},
                    {"moment_bound_fraction", row.moment_bound_fraction},
                    {"recursion_checked", row.recursion_checked},
                    {"recursion_violations", row.recursion_violations},
                    {"recursion_fraction", row.recursion_fraction},
                    {"delta_bound_violations", row.delta_bound_violations},
                    {"delta_bound_fraction", row.delta_bound_fraction}});
  }
  const auto& p = r.params;
  return {{"log_convention", kLogConvention},
          {"x", r.x},
          {"xi", r.xi},
          {"params",
           {{"lambda", p.lambda}, {"gamma", p.gamma}, {"delta", p.delta}, {"e1", p.e1},
            {"alpha", p.alpha}, {"r", p.r}}},
          {"constants",
           {{"exponent_c", r.constants.exponent_c}, {"b", r.constants.b}, {"g", r.constants.g}}},
          {"sampled", r.sampled},
          {"skipped", r.skipped},
          {"rows", rows}};
}

json to_json(const TailTransferReport& r, bool include_rows) {
  json j = {{"checked", r.rows.size()}, {"violations", r.violations}, {"max_ratio", r.max_ratio}};
  if (include_rows) {
    json rows = json::array();
    for (const auto& row : r.rows) {
      rows.push_back({{"n", row.n}, {"n_K", row.kernel}, {"delta_n", row.delta_n},
                      {"delta_n_K", row.delta_kernel}, {"Omega_rest", row.omega_rest},
                      {"holds", row.holds}});
    }
    j["rows"] = rows;
  }
  return j;
}

void write_waring_rows_csv(std::ostream& out, const std::vector<WaringRow>& rows) {
  out << "x,N,V,N_ratio,V_ratio\n";
  for (const auto& r : rows) {
    out << r.x << ',' << r.N << ',' << r.V << ',' << format_real(r.N_ratio) << ','
        << format_real(r.V_ratio) << '\n';
  }
}

void write_rep_counts_csv(std::ostream& out, const RepTable& table) {
  out << "value,count\n";
  for (const auto& rec : table.records) out << rec.value << ',' << rec.total << '\n';
}

}  // namespace hooley
