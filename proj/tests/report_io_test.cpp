#include "hooley/report_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hooley;

namespace {

ScanReport sample_report() {
  ScanConfig c;
  c.x = 20'000;
  c.weight = weights::omega_power(0.5);
  c.workers = 1;
  c.checkpoints = {100, 1000};
  c.gammas = kDefaultGammas;
  return scan(c);
}

}  // namespace

TEST(ReportIo, JsonRoundTrip) {
  const auto r = sample_report();
  const auto j = to_json(r);
  EXPECT_EQ(j.at("log_convention"), kLogConvention);
  EXPECT_EQ(j.at("weight").at("name"), "omega_power");
  const auto back = scan_report_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_TRUE(back == r);
}

TEST(ReportIo, JsonIgnoresExecutionSettings) {
  ScanConfig c;
  c.x = 5000;
  c.segment_size = 100;
  c.workers = 3;
  const auto a = to_json(scan(c)).dump();
  c.segment_size = 4000;
  c.workers = 1;
  EXPECT_EQ(a, to_json(scan(c)).dump());
}

TEST(ReportIo, HistogramCsv) {
  ScanConfig c;
  c.x = 10;
  c.workers = 1;
  std::ostringstream out;
  write_histogram_csv(out, scan(c));
  EXPECT_EQ(out.str(), "delta,count\n1,5\n2,5\n");
}

TEST(ReportIo, CheckpointCsv) {
  std::vector<CheckpointRow> rows = {{10, 15.0, {{"sqrt_loglog", 0.5}}},
                                     {20, 33.0, {{"sqrt_loglog", 0.25}, {"y_below_one", 2.0}}}};
  std::ostringstream out;
  write_checkpoints_csv(out, rows);
  EXPECT_EQ(out.str(),
            "x,S,ratio_sqrt_loglog,ratio_y_below_one\n10,15,0.5,\n20,33,0.25,2\n");
}

TEST(ReportIo, NormalOrderCsv) {
  std::ostringstream out;
  write_normal_order_csv(out, {{0.5, 3, 4, 0.75}});
  EXPECT_EQ(out.str(), "gamma,exceed,total,fraction\n0.5,3,4,0.75\n");
}

TEST(ReportIo, WaringCsv) {
  std::ostringstream out;
  write_rep_counts_csv(out, enumerate(WaringForm{}, 2));
  EXPECT_EQ(out.str(), "value,count\n0,1\n1,3\n2,3\n");
  std::ostringstream rows;
  write_waring_rows_csv(rows, {{2, 8, 2, 0.5, 0.25}});
  EXPECT_EQ(rows.str(), "x,N,V,N_ratio,V_ratio\n2,8,2,0.5,0.25\n");
}

TEST(ReportIo, RealFormatting) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(2.613705638880109), "2.61370563888011");
  EXPECT_EQ(format_real(1e20), "1e+20");
}

TEST(ReportIo, TailJson) {
  TailTransferReport r;
  r.rows.push_back({12, 3, 3, 2, 2, true});
  const auto j = to_json(r, true);
  EXPECT_EQ(j.at("checked"), 1);
  EXPECT_EQ(j.at("rows").at(0).at("n_K"), 3);
  EXPECT_FALSE(to_json(r, false).contains("rows"));
}
