#pragma once

// JSON and CSV emission. CSV: dot decimal, header row always present, reals
// with 15 significant digits.

#include <ostream>
#include <string>

#include <json.hpp>

#include "hooley/aggregates.hpp"
#include "hooley/waring.hpp"

namespace hooley {

inline constexpr const char* kLogConvention = "natural log, base-e iterates";

std::string format_real(double v);

nlohmann::json to_json(const ScanReport& r);
ScanReport scan_report_from_json(const nlohmann::json& j);

void write_histogram_csv(std::ostream& out, const ScanReport& r);
void write_checkpoints_csv(std::ostream& out, const std::vector<CheckpointRow>& rows);
void write_normal_order_csv(std::ostream& out, const std::vector<NormalOrderRow>& rows);

nlohmann::json to_json(const PpxReport& r);
nlohmann::json to_json(const TailTransferReport& r, bool include_rows);

void write_waring_rows_csv(std::ostream& out, const std::vector<WaringRow>& rows);
/// value,count rows of the representation histogram r(v).
void write_rep_counts_csv(std::ostream& out, const RepTable& table);

}  // namespace hooley
