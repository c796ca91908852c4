#include "asev/asev.h"

#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "errors.hpp"
#include "report_io.hpp"
#include "scenario_io.hpp"
#include "sim.hpp"
#include "text.hpp"

struct asev_scenario {
  asev::LoadedScenario loaded;
};

struct asev_report {
  asev::SimReport report;
  double stage_minutes = 5.0;
  std::string json;
  std::string infeasibility;
  mutable std::string summary;
};

struct asev_diagnostics {
  std::vector<std::string> messages;
};

namespace {

thread_local std::string last_error;
thread_local std::string text_buffer;

asev_status fail(asev_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
asev_status guarded(F&& body) {
  try {
    return body();
  } catch (const asev::InfeasibleError& e) {
    return fail(ASEV_ERR_INFEASIBLE, e.what());
  } catch (const asev::InputError& e) {
    return fail(ASEV_ERR_INPUT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ASEV_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ASEV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ASEV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ASEV_ERR_INTERNAL, "unknown error");
  }
}

asev::PolicyKind to_kind(asev_policy p) {
  switch (p) {
    case ASEV_POLICY_GREEDY:
      return asev::PolicyKind::greedy;
    case ASEV_POLICY_RENEWABLE:
      return asev::PolicyKind::renewable;
    case ASEV_POLICY_ROLLOUT:
      return asev::PolicyKind::rollout;
  }
  throw std::invalid_argument("unknown policy value " + std::to_string(static_cast<int>(p)));
}

asev_policy to_c(asev::PolicyKind p) {
  switch (p) {
    case asev::PolicyKind::greedy:
      return ASEV_POLICY_GREEDY;
    case asev::PolicyKind::renewable:
      return ASEV_POLICY_RENEWABLE;
    case asev::PolicyKind::rollout:
      return ASEV_POLICY_ROLLOUT;
  }
  return ASEV_POLICY_GREEDY;
}

asev_report* wrap(asev::SimReport r, double stage_minutes) {
  auto* out = new asev_report{std::move(r), stage_minutes, {}, {}, {}};
  out->json = asev::report_to_json(out->report, stage_minutes);
  if (out->report.infeasibility) out->infeasibility = out->report.infeasibility->message;
  return out;
}

std::vector<asev::SimReport> unwrap(const asev_report* const* reports, size_t count) {
  if (!reports && count > 0) throw std::invalid_argument("null report list");
  std::vector<asev::SimReport> out;
  for (size_t i = 0; i < count; ++i) {
    if (!reports[i]) throw std::invalid_argument("null report");
    out.push_back(reports[i]->report);
  }
  return out;
}

}  // namespace

extern "C" {

const char* asev_version(void) { return "0.1.0"; }

const char* asev_last_error(void) { return last_error.c_str(); }

asev_status asev_policy_from_name(const char* name, asev_policy* out) {
  if (!name || !out) return fail(ASEV_ERR_ARGUMENT, "null argument");
  const auto kind = asev::parse_policy(name);
  if (!kind) {
    return fail(ASEV_ERR_ARGUMENT,
                std::string("unknown policy '") + name + "' (use greedy, renewable, rollout)");
  }
  *out = to_c(*kind);
  return ASEV_OK;
}

const char* asev_policy_name(asev_policy policy) {
  switch (policy) {
    case ASEV_POLICY_GREEDY:
      return "greedy";
    case ASEV_POLICY_RENEWABLE:
      return "renewable";
    case ASEV_POLICY_ROLLOUT:
      return "rollout";
  }
  return "";
}

asev_status asev_scenario_load(const char* path, asev_scenario** out) {
  if (!path || !out) return fail(ASEV_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new asev_scenario{asev::load_scenario(path)};
    return ASEV_OK;
  });
}

void asev_scenario_free(asev_scenario* scenario) { delete scenario; }

asev_status asev_scenario_set_seed(asev_scenario* scenario, uint64_t seed) {
  if (!scenario) return fail(ASEV_ERR_ARGUMENT, "null scenario");
  scenario->loaded.scenario.seed = seed;
  return ASEV_OK;
}

asev_status asev_scenario_set_param(asev_scenario* scenario, const char* key, double value) {
  if (!scenario || !key) return fail(ASEV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto copy = scenario->loaded;
    try {
      asev::set_parameter(copy, key, value);
    } catch (const asev::InputError& e) {
      return fail(ASEV_ERR_ARGUMENT, e.what());
    }
    scenario->loaded = std::move(copy);
    return ASEV_OK;
  });
}

asev_status asev_scenario_set_parallel(asev_scenario* scenario, int enabled) {
  if (!scenario) return fail(ASEV_ERR_ARGUMENT, "null scenario");
  scenario->loaded.scenario.rollout.parallel_eval = enabled != 0;
  return ASEV_OK;
}

const char* asev_sweepable_keys(void) {
  static const std::string keys = [] {
    std::string s;
    for (const auto& k : asev::sweepable_keys()) s += (s.empty() ? "" : ",") + k;
    return s;
  }();
  return keys.c_str();
}

double asev_scenario_stage_minutes(const asev_scenario* scenario) {
  return scenario ? scenario->loaded.scenario.fleet.stage_minutes : 0.0;
}

int asev_scenario_horizon(const asev_scenario* scenario) {
  return scenario ? scenario->loaded.scenario.fleet.horizon : 0;
}

size_t asev_scenario_flight_count(const asev_scenario* scenario) {
  return scenario ? scenario->loaded.scenario.schedule.size() : 0;
}

size_t asev_scenario_default_policies(const asev_scenario* scenario, asev_policy* out,
                                      size_t capacity) {
  if (!scenario) return 0;
  std::vector<asev::PolicyKind> list = scenario->loaded.default_policies;
  if (list.empty() && scenario->loaded.default_policy) list.push_back(*scenario->loaded.default_policy);
  for (size_t i = 0; out && i < std::min(capacity, list.size()); ++i) out[i] = to_c(list[i]);
  return list.size();
}

asev_status asev_validate(const char* path, asev_diagnostics** out) {
  if (!path || !out) return fail(ASEV_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* d = new asev_diagnostics{};
    for (const auto& diag : asev::validate_scenario_file(path)) d->messages.push_back(diag.render());
    *out = d;
    return ASEV_OK;
  });
}

size_t asev_diagnostics_count(const asev_diagnostics* diagnostics) {
  return diagnostics ? diagnostics->messages.size() : 0;
}

const char* asev_diagnostics_message(const asev_diagnostics* diagnostics, size_t index) {
  if (!diagnostics || index >= diagnostics->messages.size()) return "";
  return diagnostics->messages[index].c_str();
}

void asev_diagnostics_free(asev_diagnostics* diagnostics) { delete diagnostics; }

asev_status asev_run(const asev_scenario* scenario, asev_policy policy, asev_report** out) {
  if (!scenario || !out) return fail(ASEV_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto& s = scenario->loaded.scenario;
    *out = wrap(asev::run(s, to_kind(policy)), s.fleet.stage_minutes);
    return ASEV_OK;
  });
}

asev_status asev_compare(const asev_scenario* scenario, const asev_policy* policies, size_t count,
                         asev_report** out) {
  if (!scenario || (!policies && count > 0) || (!out && count > 0)) {
    return fail(ASEV_ERR_ARGUMENT, "null argument");
  }
  for (size_t i = 0; i < count; ++i) out[i] = nullptr;
  return guarded([&] {
    std::vector<asev::PolicyKind> kinds;
    for (size_t i = 0; i < count; ++i) kinds.push_back(to_kind(policies[i]));
    const auto& s = scenario->loaded.scenario;
    auto reports = asev::compare(s, kinds);
    for (size_t i = 0; i < count; ++i) out[i] = wrap(std::move(reports[i]), s.fleet.stage_minutes);
    return ASEV_OK;
  });
}

void asev_report_free(asev_report* report) { delete report; }

int asev_report_feasible(const asev_report* report) {
  return report && report->report.feasible ? 1 : 0;
}

asev_policy asev_report_policy(const asev_report* report) {
  return report ? to_c(report->report.policy) : ASEV_POLICY_GREEDY;
}

asev_status asev_report_cost(const asev_report* report, asev_cost* out) {
  if (!report || !out) return fail(ASEV_ERR_ARGUMENT, "null argument");
  const auto& c = report->report.cost;
  *out = asev_cost{c.energy, c.degradation, c.terminal, c.total};
  return ASEV_OK;
}

const char* asev_report_infeasibility(const asev_report* report) {
  return report ? report->infeasibility.c_str() : "";
}

int asev_report_infeasible_stage(const asev_report* report) {
  return report && report->report.infeasibility ? report->report.infeasibility->stage : -1;
}

const char* asev_report_json(const asev_report* report) {
  return report ? report->json.c_str() : "";
}

asev_status asev_report_write(const asev_report* report, const char* directory) {
  if (!report || !directory) return fail(ASEV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    asev::write_report(report->report, report->stage_minutes, directory);
    return ASEV_OK;
  });
}

const char* asev_report_summary(const asev_report* report, const char* currency) {
  if (!report) return "";
  report->summary = asev::summary_line(report->report, currency ? currency : "");
  return report->summary.c_str();
}

const char* asev_comparison_csv(const asev_report* const* reports, size_t count) {
  try {
    text_buffer = asev::comparison_csv(unwrap(reports, count));
  } catch (const std::exception& e) {
    last_error = e.what();
    text_buffer.clear();
  }
  return text_buffer.c_str();
}

const char* asev_comparison_table(const asev_report* const* reports, size_t count,
                                  const char* currency) {
  try {
    text_buffer = asev::comparison_table(unwrap(reports, count), currency ? currency : "");
  } catch (const std::exception& e) {
    last_error = e.what();
    text_buffer.clear();
  }
  return text_buffer.c_str();
}

asev_status asev_expand_tariff(const char* tiers_path, const char* out_path, int horizon,
                               double stage_minutes, double terminal_price) {
  if (!tiers_path || !out_path) return fail(ASEV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    if (horizon < 1 || !(stage_minutes > 0)) {
      throw std::invalid_argument("horizon and stage length must be positive");
    }
    const auto tiers = asev::parse_tiers(asev::text::read_file(tiers_path), stage_minutes);
    std::optional<double> terminal;
    if (terminal_price >= 0) terminal = terminal_price;
    const auto prices = asev::expand_tiers(tiers, horizon, terminal);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw asev::InputError(std::string("cannot write '") + out_path + "'");
    out << asev::format_stage_values(prices, 4);
    return ASEV_OK;
  });
}

}  // extern "C"
