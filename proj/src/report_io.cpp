#include "report_io.hpp"

#include <fstream>
#include <json.hpp>

#include "errors.hpp"
#include "text.hpp"

namespace asev {
namespace {

using nlohmann::ordered_json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

// Money is rounded in the serialized report so golden files stay diff-stable.
double money(double v) { return std::stod(text::fixed(v, 2)); }

std::string delta_percent(double value, double base) {
  if (base == 0.0) return "";
  return text::fixed(100.0 * (value - base) / base, 2);
}

}  // namespace

std::string report_to_json(const SimReport& report, double stage_minutes) {
  ordered_json j;
  j["policy"] = to_string(report.policy);
  j["feasible"] = report.feasible;
  if (report.infeasibility) {
    j["infeasibility"] = {{"stage", report.infeasibility->stage},
                          {"time", stage_to_hhmm(report.infeasibility->stage, stage_minutes)},
                          {"flight_id", report.infeasibility->flight_id},
                          {"message", report.infeasibility->message}};
  }
  j["cost"] = {{"energy", money(report.cost.energy)},
               {"degradation", money(report.cost.degradation)},
               {"terminal", money(report.cost.terminal)},
               {"total", money(report.cost.total)}};
  j["cost_exact"] = {{"energy", report.cost.energy},
                     {"degradation", report.cost.degradation},
                     {"terminal", report.cost.terminal},
                     {"total", report.cost.total}};
  auto& timelines = j["timelines"] = ordered_json::array();
  for (const auto& line : report.timelines) {
    auto arr = ordered_json::array();
    for (const auto& iv : line) {
      arr.push_back({{"start", stage_to_hhmm(iv.start, stage_minutes)},
                     {"end", stage_to_hhmm(iv.end, stage_minutes)},
                     {"mode", to_string(iv.mode)}});
    }
    timelines.push_back(std::move(arr));
  }
  auto& load = j["load_curve_kwh"] = ordered_json::array();
  for (double v : report.load_curve) load.push_back(std::stod(text::fixed(v, 4)));
  auto& log = j["service_log"] = ordered_json::array();
  for (const auto& s : report.service_log) {
    log.push_back({{"flight_id", s.flight_id},
                   {"asev", s.asev},
                   {"start", stage_to_hhmm(s.start_stage, stage_minutes)},
                   {"start_stage", s.start_stage},
                   {"delay", s.delay},
                   {"workload", s.workload}});
  }
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

void write_report(const SimReport& report, double stage_minutes,
                  const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir.string() + "'");

  write_file(dir / "report.json", report_to_json(report, stage_minutes));

  for (std::size_t i = 0; i < report.timelines.size(); ++i) {
    std::string csv = "start_hhmm,end_hhmm,mode\n";
    for (const auto& iv : report.timelines[i]) {
      csv += stage_to_hhmm(iv.start, stage_minutes) + "," + stage_to_hhmm(iv.end, stage_minutes) +
             "," + std::string(to_string(iv.mode)) + "\n";
    }
    write_file(dir / ("timeline_" + std::to_string(i) + ".csv"), csv);
  }

  std::string load = "stage,kwh\n";
  for (std::size_t t = 0; t < report.load_curve.size(); ++t) {
    load += std::to_string(t) + "," + text::fixed(report.load_curve[t], 4) + "\n";
  }
  write_file(dir / "load_curve.csv", load);

  std::string log = "flight_id,asev,start_hhmm,start_stage,delay,workload\n";
  for (const auto& s : report.service_log) {
    log += s.flight_id + "," + std::to_string(s.asev) + "," +
           stage_to_hhmm(s.start_stage, stage_minutes) + "," + std::to_string(s.start_stage) + "," +
           std::to_string(s.delay) + "," + std::to_string(s.workload) + "\n";
  }
  write_file(dir / "service_log.csv", log);
}

std::string summary_line(const SimReport& report, const std::string& currency) {
  const auto m = [&](double v) { return currency + text::fixed(v, 2); };
  return std::string(to_string(report.policy)) + " " + m(report.cost.total) + " " +
         m(report.cost.energy) + " " + m(report.cost.degradation) + " " + m(report.cost.terminal) +
         " " + (report.feasible ? "true" : "false");
}

std::string comparison_csv(const std::vector<SimReport>& reports) {
  std::string csv =
      "policy,feasible,total,energy,degradation,terminal,delta_total_pct,delta_energy_pct,"
      "delta_degradation_pct,delta_terminal_pct\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    csv += std::string(to_string(r.policy)) + "," + (r.feasible ? "true" : "false") + "," +
           text::fixed(r.cost.total, 2) + "," + text::fixed(r.cost.energy, 2) + "," +
           text::fixed(r.cost.degradation, 2) + "," + text::fixed(r.cost.terminal, 2);
    const auto& base = reports.front();
    const bool with_delta = k > 0 && r.feasible && base.feasible;
    csv += "," + (with_delta ? delta_percent(r.cost.total, base.cost.total) : "");
    csv += "," + (with_delta ? delta_percent(r.cost.energy, base.cost.energy) : "");
    csv += "," + (with_delta ? delta_percent(r.cost.degradation, base.cost.degradation) : "");
    csv += "," + (with_delta ? delta_percent(r.cost.terminal, base.cost.terminal) : "");
    csv += "\n";
  }
  return csv;
}

std::string comparison_table(const std::vector<SimReport>& reports, const std::string& currency) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof line, "%-10s %-8s %12s %12s %12s %12s %9s\n", "policy", "feasible",
                "total", "energy", "degradation", "terminal", "Δtotal");
  out += line;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    const auto m = [&](double v) { return currency + text::fixed(v, 2); };
    std::string delta;
    if (k > 0 && r.feasible && reports.front().feasible) {
      delta = delta_percent(r.cost.total, reports.front().cost.total) + "%";
    }
    std::snprintf(line, sizeof line, "%-10s %-8s %12s %12s %12s %12s %9s\n",
                  std::string(to_string(r.policy)).c_str(), r.feasible ? "true" : "false",
                  m(r.cost.total).c_str(), m(r.cost.energy).c_str(), m(r.cost.degradation).c_str(),
                  m(r.cost.terminal).c_str(), delta.c_str());
    out += line;
    if (r.infeasibility) {
      out += "  infeasible at stage " + std::to_string(r.infeasibility->stage) + ": " +
             r.infeasibility->message + "\n";
    }
  }
  return out;
}

}  // namespace asev
