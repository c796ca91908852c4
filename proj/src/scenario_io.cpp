#include "scenario_io.hpp"

#include <cmath>
#include <json.hpp>

#include "errors.hpp"
#include "text.hpp"

namespace asev {
namespace {

using nlohmann::json;

const std::vector<std::string> kTopLevelKeys = {
    "fleet",  "initial_soc", "prices", "renewable", "degradation", "workload", "schedule",
    "events", "seed",        "rollout", "policy",   "policies",    "description"};

const std::vector<std::string> kFleetKeys = {
    "n_ev",       "capacity_kwh",         "soc_min", "soc_max", "charge_power_kw",
    "efficiency", "e_work_kwh_per_stage", "d_thre",  "horizon", "stage_minutes",
    "cycles_to_failure"};

class Loader {
 public:
  explicit Loader(std::filesystem::path path) : path_(std::move(path)), dir_(path_.parent_path()) {}

  std::vector<Diagnostic> diagnostics;

  LoadedScenario load() {
    LoadedScenario out;
    json doc;
    try {
      doc = json::parse(text::read_file(path_));
    } catch (const InputError& e) {
      report("", e.what(), "check the scenario path");
      return out;
    } catch (const json::parse_error& e) {
      report("", std::string("not valid JSON: ") + e.what(), "fix the JSON syntax");
      return out;
    }
    if (!doc.is_object()) {
      report("", "scenario must be a JSON object", "wrap the sections in { ... }");
      return out;
    }
    for (const auto& [key, _] : doc.items()) {
      if (std::find(kTopLevelKeys.begin(), kTopLevelKeys.end(), key) == kTopLevelKeys.end()) {
        report(key, "unknown key", "remove it or fix the spelling");
      }
    }

    Scenario& s = out.scenario;
    read_fleet(doc, s.fleet);
    s.initial_soc = number(doc, "initial_soc", "initial_soc", s.fleet.soc_max);
    if (doc.contains("seed")) {
      if (doc["seed"].is_number_unsigned()) {
        s.seed = doc["seed"].get<std::uint64_t>();
      } else {
        report("seed", "must be a non-negative integer", "use e.g. \"seed\": 7");
      }
    }

    const int horizon = s.fleet.horizon;
    const double dt = s.fleet.stage_minutes;
    read_prices(doc, s, horizon, dt);
    out.renewable_kw = read_renewable(doc, horizon, dt, out.pv_scale);
    s.profiles.renewable_energy.resize(out.renewable_kw.size());
    for (std::size_t t = 0; t < out.renewable_kw.size(); ++t) {
      s.profiles.renewable_energy[t] = out.renewable_kw[t] * out.pv_scale * dt / 60.0;
    }

    if (doc.contains("degradation")) {
      const auto& d = doc["degradation"];
      s.degradation.a0 = number(d, "a0", "degradation.a0", s.degradation.a0);
      s.degradation.a1 = number(d, "a1", "degradation.a1", s.degradation.a1);
    }

    TruncatedNormalSpec workload;
    if (doc.contains("workload")) {
      const auto& w = doc["workload"];
      workload.mu = number(w, "mu_min", "workload.mu_min", workload.mu);
      workload.sigma = number(w, "sigma_min", "workload.sigma_min", workload.sigma);
      workload.lower = number(w, "lower_min", "workload.lower_min", workload.lower);
      workload.upper = number(w, "upper_min", "workload.upper_min", workload.upper);
      try {
        validate_spec(workload, dt);
      } catch (const InputError& e) {
        report("workload", e.what(), "use positive bounds that are multiples of the stage length");
      }
    }

    if (doc.contains("schedule")) {
      if (!doc["schedule"].is_string()) {
        report("schedule", "must be a path to a CSV file", "e.g. \"schedule\": \"schedule.csv\"");
      } else {
        try {
          s.schedule = load_schedule(dir_ / doc["schedule"].get<std::string>(), workload, horizon, dt);
        } catch (const InputError& e) {
          report("schedule", e.what(), "fix the schedule CSV");
        }
      }
    }

    read_events(doc, s, dt);
    read_rollout(doc, s.rollout);

    if (doc.contains("policy")) {
      out.default_policy = policy(doc["policy"], "policy");
    }
    if (doc.contains("policies")) {
      if (!doc["policies"].is_array()) {
        report("policies", "must be a list", "e.g. [\"greedy\", \"rollout\"]");
      } else {
        for (std::size_t i = 0; i < doc["policies"].size(); ++i) {
          if (auto p = policy(doc["policies"][i], "policies[" + std::to_string(i) + "]")) {
            out.default_policies.push_back(*p);
          }
        }
      }
    }

    if (diagnostics.empty()) {
      try {
        s.validate();
      } catch (const InputError& e) {
        report("scenario", e.what(), "make the sections consistent with each other");
      }
    }
    return out;
  }

 private:
  void report(std::string key, std::string message, std::string remedy) {
    diagnostics.push_back({std::move(key), std::move(message), std::move(remedy)});
  }

  double number(const json& obj, const char* key, const std::string& path, double fallback) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      report(path, "must be a number", "write a plain numeric value");
      return fallback;
    }
    return v.get<double>();
  }

  int integer(const json& obj, const char* key, const std::string& path, int fallback) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
      report(path, "must be an integer", "write a whole number");
      return fallback;
    }
    return v.get<int>();
  }

  std::optional<PolicyKind> policy(const json& v, const std::string& path) {
    if (v.is_string()) {
      if (auto p = parse_policy(v.get<std::string>())) return p;
    }
    report(path, "unknown policy", "use one of greedy, renewable, rollout");
    return std::nullopt;
  }

  void read_fleet(const json& doc, FleetParams& f) {
    if (!doc.contains("fleet")) return;
    const auto& j = doc["fleet"];
    if (!j.is_object()) {
      report("fleet", "must be an object", "e.g. \"fleet\": {\"n_ev\": 25}");
      return;
    }
    for (const auto& [key, _] : j.items()) {
      if (std::find(kFleetKeys.begin(), kFleetKeys.end(), key) == kFleetKeys.end()) {
        report("fleet." + key, "unknown key", "remove it or fix the spelling");
      }
    }
    f.n_ev = integer(j, "n_ev", "fleet.n_ev", f.n_ev);
    f.capacity_kwh = number(j, "capacity_kwh", "fleet.capacity_kwh", f.capacity_kwh);
    f.soc_min = number(j, "soc_min", "fleet.soc_min", f.soc_min);
    f.soc_max = number(j, "soc_max", "fleet.soc_max", f.soc_max);
    f.charge_power_kw = number(j, "charge_power_kw", "fleet.charge_power_kw", f.charge_power_kw);
    f.efficiency = number(j, "efficiency", "fleet.efficiency", f.efficiency);
    f.e_work_kwh_per_stage =
        number(j, "e_work_kwh_per_stage", "fleet.e_work_kwh_per_stage", f.e_work_kwh_per_stage);
    f.d_thre = integer(j, "d_thre", "fleet.d_thre", f.d_thre);
    f.horizon = integer(j, "horizon", "fleet.horizon", f.horizon);
    f.stage_minutes = number(j, "stage_minutes", "fleet.stage_minutes", f.stage_minutes);
    f.cycles_to_failure =
        number(j, "cycles_to_failure", "fleet.cycles_to_failure", f.cycles_to_failure);
    try {
      f.validate();
    } catch (const InputError& e) {
      report("fleet", e.what(), "adjust the fleet parameters");
    }
  }

  std::vector<TariffTier> inline_tiers(const json& list, const std::string& path,
                                       const char* value_key, double dt) {
    std::vector<TariffTier> tiers;
    if (!list.is_array()) {
      report(path, "must be a list of {start, end, " + std::string(value_key) + "}",
             "e.g. [{\"start\": \"00:00\", \"end\": \"07:00\", \"" + std::string(value_key) +
                 "\": 0.07}]");
      return tiers;
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& t = list[i];
      const std::string at = path + "[" + std::to_string(i) + "]";
      if (!t.is_object() || !t.contains("start") || !t.contains("end") || !t.contains(value_key) ||
          !t["start"].is_string() || !t["end"].is_string() || !t[value_key].is_number()) {
        report(at, "malformed tier", "give start/end as \"HH:MM\" and a numeric " +
                                         std::string(value_key));
        continue;
      }
      try {
        tiers.push_back({parse_hhmm_to_stage(t["start"].get<std::string>(), dt),
                         parse_hhmm_to_stage(t["end"].get<std::string>(), dt),
                         t[value_key].get<double>()});
      } catch (const InputError& e) {
        report(at, e.what(), "use stage-aligned HH:MM times");
      }
    }
    return tiers;
  }

  void read_prices(const json& doc, Scenario& s, int horizon, double dt) {
    if (!doc.contains("prices") || !doc["prices"].is_object()) {
      report("prices", "missing or not an object",
             "add \"prices\" with tiers, tiers_file or grid_file");
      return;
    }
    const auto& p = doc["prices"];
    s.profiles.renewable_price =
        number(p, "renewable_price", "prices.renewable_price", s.profiles.renewable_price);
    std::optional<double> terminal;
    if (p.contains("terminal_price")) terminal = number(p, "terminal_price", "prices.terminal_price", 0);

    try {
      if (p.contains("grid_file")) {
        const auto path = dir_ / p["grid_file"].get<std::string>();
        s.profiles.grid_price = parse_stage_values(text::read_file(path), "grid profile");
        if (s.profiles.grid_price.size() != static_cast<std::size_t>(horizon) + 1) {
          report("prices.grid_file",
                 "grid profile length " + std::to_string(s.profiles.grid_price.size()) +
                     " ≠ horizon+1 " + std::to_string(horizon + 1),
                 "list one price per stage plus the end-of-day price");
        }
        if (terminal) s.profiles.grid_price.back() = *terminal;
      } else if (p.contains("tiers_file")) {
        const auto path = dir_ / p["tiers_file"].get<std::string>();
        s.profiles.grid_price =
            expand_tiers(parse_tiers(text::read_file(path), dt), horizon, terminal);
      } else if (p.contains("tiers")) {
        auto tiers = inline_tiers(p["tiers"], "prices.tiers", "price", dt);
        s.profiles.grid_price = expand_tiers(tiers, horizon, terminal);
      } else {
        report("prices", "no grid tariff given", "add tiers, tiers_file or grid_file");
      }
    } catch (const InputError& e) {
      report("prices", e.what(), "fix the tariff definition");
    } catch (const json::exception& e) {
      report("prices", e.what(), "file references must be strings");
    }
  }

  std::vector<double> read_renewable(const json& doc, int horizon, double dt, double& scale) {
    std::vector<double> kw(static_cast<std::size_t>(horizon), 0.0);
    if (!doc.contains("renewable")) return kw;
    const auto& r = doc["renewable"];
    scale = number(r, "scale", "renewable.scale", 1.0);
    if (scale < 0) report("renewable.scale", "must be non-negative", "use a factor >= 0");
    try {
      if (r.contains("file")) {
        kw = parse_stage_values(text::read_file(dir_ / r["file"].get<std::string>()), "profile");
        if (kw.size() != static_cast<std::size_t>(horizon)) {
          report("renewable.file",
                 "profile length " + std::to_string(kw.size()) + " ≠ horizon " +
                     std::to_string(horizon),
                 "provide one PV power value (kW) per stage");
        }
      } else if (r.contains("tiers")) {
        const auto tiers = inline_tiers(r["tiers"], "renewable.tiers", "kw", dt);
        for (const auto& t : tiers) {
          for (int k = std::max(0, t.start_stage); k < std::min(horizon, t.end_stage); ++k) {
            kw[static_cast<std::size_t>(k)] = t.price;
          }
        }
      }
    } catch (const InputError& e) {
      report("renewable", e.what(), "fix the renewable profile");
    } catch (const json::exception& e) {
      report("renewable", e.what(), "file references must be strings");
    }
    for (double v : kw) {
      if (v < 0) {
        report("renewable", "negative PV power", "PV output must be >= 0 kW");
        break;
      }
    }
    return kw;
  }

  void read_events(const json& doc, Scenario& s, double dt) {
    if (!doc.contains("events")) return;
    const auto& list = doc["events"];
    if (!list.is_array()) {
      report("events", "must be a list", "e.g. [{\"kind\": \"cancellation\", ...}]");
      return;
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& e = list[i];
      const std::string at = "events[" + std::to_string(i) + "]";
      if (!e.is_object() || e.value("kind", "") != "cancellation" || !e.contains("flight_id") ||
          !e.contains("announce_hhmm")) {
        report(at, "malformed event",
               "use {\"kind\": \"cancellation\", \"flight_id\": ..., \"announce_hhmm\": \"HH:MM\"}");
        continue;
      }
      try {
        s.events.push_back({ScheduleEvent::Kind::cancellation, e["flight_id"].get<std::string>(),
                            parse_hhmm_to_stage(e["announce_hhmm"].get<std::string>(), dt)});
      } catch (const InputError& ex) {
        report(at + ".announce_hhmm", ex.what(), "use a stage-aligned HH:MM time");
      } catch (const json::exception& ex) {
        report(at, ex.what(), "flight_id and announce_hhmm must be strings");
      }
    }
  }

  void read_rollout(const json& doc, RolloutConfig& cfg) {
    if (!doc.contains("rollout")) return;
    const auto& r = doc["rollout"];
    if (r.contains("workload_mode")) {
      const auto mode = r["workload_mode"].is_string() ? r["workload_mode"].get<std::string>() : "";
      if (mode == "certainty-equivalent") {
        cfg.workload_mode = RolloutConfig::WorkloadMode::certainty_equivalent;
      } else if (mode == "monte-carlo") {
        cfg.workload_mode = RolloutConfig::WorkloadMode::monte_carlo;
      } else {
        report("rollout.workload_mode", "unknown mode", "use certainty-equivalent or monte-carlo");
      }
    }
    cfg.samples = integer(r, "samples", "rollout.samples", cfg.samples);
    if (r.contains("parallel")) {
      if (r["parallel"].is_boolean()) {
        cfg.parallel_eval = r["parallel"].get<bool>();
      } else {
        report("rollout.parallel", "must be true or false", "write a JSON boolean");
      }
    }
    if (cfg.samples < 1) report("rollout.samples", "must be at least 1", "use M >= 1");
  }

  std::filesystem::path path_;
  std::filesystem::path dir_;
};

}  // namespace

std::string Diagnostic::render() const {
  std::string out = key.empty() ? "scenario" : key;
  out += ": " + message;
  if (!remedy.empty()) out += " (" + remedy + ")";
  return out;
}

std::vector<TariffTier> parse_tiers(std::string_view content, double stage_minutes) {
  std::vector<TariffTier> tiers;
  int line_no = 0;
  for (const auto& raw : text::split_lines(content)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = text::split_csv(line);
    if (fields.size() != 3) {
      throw InputError("tier line " + std::to_string(line_no) + ": expected start_hhmm,end_hhmm,price");
    }
    if (fields[0] == "start_hhmm") continue;
    const auto price = text::parse_double(fields[2]);
    if (!price) throw InputError("tier line " + std::to_string(line_no) + ": non-numeric price");
    try {
      tiers.push_back({parse_hhmm_to_stage(fields[0], stage_minutes),
                       parse_hhmm_to_stage(fields[1], stage_minutes), *price});
    } catch (const InputError& e) {
      throw InputError("tier line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return tiers;
}

std::vector<double> expand_tiers(const std::vector<TariffTier>& tiers, int horizon,
                                 std::optional<double> terminal_price) {
  std::vector<double> prices(static_cast<std::size_t>(horizon) + 1, -1.0);
  for (const auto& t : tiers) {
    if (t.start_stage < 0 || t.end_stage > horizon || t.start_stage >= t.end_stage) {
      throw InputError("tier " + stage_to_hhmm(t.start_stage, 1440.0 / horizon) + "-" +
                       stage_to_hhmm(t.end_stage, 1440.0 / horizon) + " is empty or outside the day");
    }
    if (t.price < 0) throw InputError("tier prices must be non-negative");
    for (int k = t.start_stage; k < t.end_stage; ++k) {
      if (prices[static_cast<std::size_t>(k)] >= 0) throw InputError("tiers overlap");
      prices[static_cast<std::size_t>(k)] = t.price;
    }
  }
  for (int k = 0; k < horizon; ++k) {
    if (prices[static_cast<std::size_t>(k)] < 0) {
      throw InputError("stage " + std::to_string(k) + " not covered by any tier");
    }
  }
  prices.back() = terminal_price.value_or(prices.front());
  return prices;
}

std::vector<double> parse_stage_values(std::string_view content, std::string_view what) {
  std::vector<double> values;
  int line_no = 0;
  for (const auto& raw : text::split_lines(content)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = text::split_csv(line);
    if (values.empty() && fields.size() == 2 && fields[0] == "stage") continue;
    const auto fail = [&](const std::string& msg) {
      throw InputError(std::string(what) + " line " + std::to_string(line_no) + ": " + msg);
    };
    if (fields.size() != 2) fail("expected stage,value");
    const auto stage = text::parse_int(fields[0]);
    const auto value = text::parse_double(fields[1]);
    if (!stage || !value) fail("non-numeric entry");
    if (*stage != static_cast<int>(values.size())) {
      fail("stages must be consecutive from 0, expected " + std::to_string(values.size()));
    }
    values.push_back(*value);
  }
  return values;
}

std::string format_stage_values(const std::vector<double>& values, int decimals) {
  std::string out = "stage,value\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    out += std::to_string(k) + "," + text::fixed(values[k], decimals) + "\n";
  }
  return out;
}

LoadedScenario load_scenario(const std::filesystem::path& path) {
  Loader loader(path);
  auto loaded = loader.load();
  if (!loader.diagnostics.empty()) {
    std::string msg;
    for (const auto& d : loader.diagnostics) {
      if (!msg.empty()) msg += "\n";
      msg += d.render();
    }
    throw InputError(msg);
  }
  return loaded;
}

std::vector<Diagnostic> validate_scenario_file(const std::filesystem::path& path) {
  Loader loader(path);
  loader.load();
  return loader.diagnostics;
}

std::vector<std::string> sweepable_keys() {
  return {"n_ev",          "capacity_kwh", "soc_min",     "soc_max", "charge_power_kw",
          "efficiency",    "e_work",       "d_thre",      "cycles_to_failure", "a0",
          "a1",            "renewable_price", "pv_scale", "initial_soc", "seed"};
}

void set_parameter(LoadedScenario& loaded, std::string_view key, double value) {
  Scenario& s = loaded.scenario;
  const auto as_int = [&](std::string_view k) {
    if (value != std::floor(value)) throw InputError(std::string(k) + " must be an integer");
    return static_cast<int>(value);
  };
  if (key == "n_ev") {
    s.fleet.n_ev = as_int(key);
  } else if (key == "capacity_kwh") {
    s.fleet.capacity_kwh = value;
  } else if (key == "soc_min") {
    s.fleet.soc_min = value;
  } else if (key == "soc_max") {
    s.fleet.soc_max = value;
  } else if (key == "charge_power_kw") {
    s.fleet.charge_power_kw = value;
  } else if (key == "efficiency") {
    s.fleet.efficiency = value;
  } else if (key == "e_work" || key == "e_work_kwh_per_stage") {
    s.fleet.e_work_kwh_per_stage = value;
  } else if (key == "d_thre") {
    s.fleet.d_thre = as_int(key);
  } else if (key == "cycles_to_failure") {
    s.fleet.cycles_to_failure = value;
  } else if (key == "a0") {
    s.degradation.a0 = value;
  } else if (key == "a1") {
    s.degradation.a1 = value;
  } else if (key == "renewable_price") {
    s.profiles.renewable_price = value;
  } else if (key == "pv_scale") {
    if (value < 0) throw InputError("pv_scale must be non-negative");
    loaded.pv_scale = value;
    for (std::size_t t = 0; t < loaded.renewable_kw.size(); ++t) {
      s.profiles.renewable_energy[t] = loaded.renewable_kw[t] * value * s.fleet.stage_minutes / 60.0;
    }
  } else if (key == "initial_soc") {
    s.initial_soc = value;
  } else if (key == "seed") {
    if (value < 0 || value != std::floor(value)) throw InputError("seed must be a non-negative integer");
    s.seed = static_cast<std::uint64_t>(value);
  } else {
    std::string keys;
    for (const auto& k : sweepable_keys()) keys += (keys.empty() ? "" : ", ") + k;
    throw InputError("unknown parameter '" + std::string(key) + "'; sweepable keys: " + keys);
  }
  s.validate();
}

}  // namespace asev
