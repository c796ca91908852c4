#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sim.hpp"

namespace asev {

std::string report_to_json(const SimReport& report, double stage_minutes);

/// Writes report.json, timeline_<asev>.csv, load_curve.csv and service_log.csv.
void write_report(const SimReport& report, double stage_minutes, const std::filesystem::path& dir);

/// `policy total energy degradation terminal feasible`, 2 dp money.
std::string summary_line(const SimReport& report, const std::string& currency);

/// Comparison rows with percentage deltas against the first report.
std::string comparison_csv(const std::vector<SimReport>& reports);
std::string comparison_table(const std::vector<SimReport>& reports, const std::string& currency);

}  // namespace asev
