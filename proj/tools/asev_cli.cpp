// Command-line front end. Talks to the simulator only through the C API.

#include <asev/asev.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;

struct ScenarioDeleter {
  void operator()(asev_scenario* s) const { asev_scenario_free(s); }
};
struct ReportDeleter {
  void operator()(asev_report* r) const { asev_report_free(r); }
};
using ScenarioPtr = std::unique_ptr<asev_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<asev_report, ReportDeleter>;

int error_exit(asev_status status) {
  std::cerr << "error: " << asev_last_error() << "\n";
  return status == ASEV_ERR_INFEASIBLE ? kExitInfeasible : kExitInput;
}

std::string default_out_dir() {
  if (const char* env = std::getenv("ASEV_OUT"); env && *env) return env;
  return "asev_out";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_policies(const std::vector<std::string>& names, std::vector<asev_policy>& out) {
  for (const auto& n : names) {
    asev_policy p;
    if (asev_policy_from_name(n.c_str(), &p) != ASEV_OK) {
      std::cerr << "error: " << asev_last_error() << "\n";
      return false;
    }
    out.push_back(p);
  }
  return true;
}

std::vector<asev_policy> scenario_policies(const asev_scenario* s) {
  std::vector<asev_policy> out(asev_scenario_default_policies(s, nullptr, 0));
  asev_scenario_default_policies(s, out.data(), out.size());
  return out;
}

ScenarioPtr load(const std::string& path, asev_status& status) {
  asev_scenario* raw = nullptr;
  status = asev_scenario_load(path.c_str(), &raw);
  return ScenarioPtr(raw);
}

int cmd_validate(const std::string& path) {
  asev_diagnostics* diag = nullptr;
  if (auto st = asev_validate(path.c_str(), &diag); st != ASEV_OK) return error_exit(st);
  const size_t n = asev_diagnostics_count(diag);
  for (size_t i = 0; i < n; ++i) std::cout << asev_diagnostics_message(diag, i) << "\n";
  asev_diagnostics_free(diag);
  if (n == 0) {
    std::cout << "ok\n";
    return kExitOk;
  }
  return kExitInput;
}

struct RunOptions {
  std::string scenario;
  std::string policy;
  std::optional<uint64_t> seed;
  std::string out;
  std::string currency = "£";
  bool parallel = false;
};

int cmd_run(const RunOptions& opt) {
  asev_status st;
  auto scenario = load(opt.scenario, st);
  if (st != ASEV_OK) return error_exit(st);
  if (opt.seed) asev_scenario_set_seed(scenario.get(), *opt.seed);
  if (opt.parallel) asev_scenario_set_parallel(scenario.get(), 1);

  asev_policy policy = ASEV_POLICY_ROLLOUT;
  if (!opt.policy.empty()) {
    if (asev_policy_from_name(opt.policy.c_str(), &policy) != ASEV_OK) {
      return error_exit(ASEV_ERR_ARGUMENT);
    }
  } else if (auto defaults = scenario_policies(scenario.get()); !defaults.empty()) {
    policy = defaults.front();
  }

  asev_report* raw = nullptr;
  if (st = asev_run(scenario.get(), policy, &raw); st != ASEV_OK) return error_exit(st);
  ReportPtr report(raw);
  const std::string out = opt.out.empty() ? default_out_dir() : opt.out;
  if (st = asev_report_write(report.get(), out.c_str()); st != ASEV_OK) return error_exit(st);

  std::cout << asev_report_summary(report.get(), opt.currency.c_str()) << "\n";
  if (!asev_report_feasible(report.get())) {
    std::cerr << "infeasible at stage " << asev_report_infeasible_stage(report.get()) << ": "
              << asev_report_infeasibility(report.get()) << "\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

std::vector<ReportPtr> compare_reports(const asev_scenario* scenario,
                                       const std::vector<asev_policy>& policies,
                                       asev_status& st) {
  std::vector<asev_report*> raw(policies.size(), nullptr);
  st = asev_compare(scenario, policies.data(), policies.size(), raw.data());
  std::vector<ReportPtr> out;
  for (auto* r : raw) out.emplace_back(r);
  return out;
}

struct CompareOptions {
  std::string scenario;
  std::string policies;
  std::optional<uint64_t> seed;
  std::string out;
  std::string currency = "£";
  bool parallel = false;
};

int cmd_compare(const CompareOptions& opt) {
  asev_status st;
  auto scenario = load(opt.scenario, st);
  if (st != ASEV_OK) return error_exit(st);
  if (opt.seed) asev_scenario_set_seed(scenario.get(), *opt.seed);
  if (opt.parallel) asev_scenario_set_parallel(scenario.get(), 1);

  std::vector<asev_policy> policies;
  if (!opt.policies.empty()) {
    if (!parse_policies(split_list(opt.policies), policies)) return kExitInput;
  } else {
    policies = scenario_policies(scenario.get());
    if (policies.empty()) policies = {ASEV_POLICY_GREEDY, ASEV_POLICY_RENEWABLE, ASEV_POLICY_ROLLOUT};
  }
  if (policies.empty()) {
    std::cerr << "error: no policies given\n";
    return kExitInput;
  }

  auto reports = compare_reports(scenario.get(), policies, st);
  if (st != ASEV_OK) return error_exit(st);

  const std::filesystem::path out = opt.out.empty() ? default_out_dir() : opt.out;
  std::vector<const asev_report*> views;
  for (const auto& r : reports) {
    const auto dir = out / asev_policy_name(asev_report_policy(r.get()));
    if (st = asev_report_write(r.get(), dir.string().c_str()); st != ASEV_OK) return error_exit(st);
    views.push_back(r.get());
  }
  std::ofstream csv(out / "comparison.csv", std::ios::binary | std::ios::trunc);
  csv << asev_comparison_csv(views.data(), views.size());
  if (!csv) {
    std::cerr << "error: cannot write " << (out / "comparison.csv").string() << "\n";
    return kExitInput;
  }
  std::cout << asev_comparison_table(views.data(), views.size(), opt.currency.c_str());
  return kExitOk;
}

struct SweepOptions {
  std::string scenario;
  std::string param;
  std::string values;
  std::string policies = "greedy,rollout";
  std::string out;
  bool parallel = false;
};

int cmd_sweep(const SweepOptions& opt) {
  std::vector<double> values;
  for (const auto& v : split_list(opt.values)) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
      std::cerr << "error: non-numeric sweep value '" << v << "'\n";
      return kExitInput;
    }
    values.push_back(d);
  }
  if (values.empty()) {
    std::cerr << "error: --values must list at least one value\n";
    return kExitInput;
  }
  std::vector<asev_policy> policies;
  if (!parse_policies(split_list(opt.policies), policies) || policies.empty()) return kExitInput;

  std::string csv = "param,value,policy,feasible,total,energy,degradation,terminal\n";
  for (double value : values) {
    asev_status st;
    auto scenario = load(opt.scenario, st);
    if (st != ASEV_OK) return error_exit(st);
    if (opt.parallel) asev_scenario_set_parallel(scenario.get(), 1);
    if (st = asev_scenario_set_param(scenario.get(), opt.param.c_str(), value); st != ASEV_OK) {
      return error_exit(st);
    }
    auto reports = compare_reports(scenario.get(), policies, st);
    if (st != ASEV_OK) return error_exit(st);
    for (const auto& r : reports) {
      asev_cost c{};
      asev_report_cost(r.get(), &c);
      char row[256];
      std::snprintf(row, sizeof row, "%s,%g,%s,%s,%.2f,%.2f,%.2f,%.2f\n", opt.param.c_str(), value,
                    asev_policy_name(asev_report_policy(r.get())),
                    asev_report_feasible(r.get()) ? "true" : "false", c.total, c.energy,
                    c.degradation, c.terminal);
      csv += row;
    }
  }

  const std::filesystem::path out = opt.out.empty() ? default_out_dir() : opt.out;
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  std::ofstream file(out / "sweep.csv", std::ios::binary | std::ios::trunc);
  file << csv;
  if (!file) {
    std::cerr << "error: cannot write " << (out / "sweep.csv").string() << "\n";
    return kExitInput;
  }
  std::cout << csv;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Airport service EV fleet simulator and rollout controller"};
  app.set_version_flag("--version", std::string(asev_version()));
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Statically check a scenario file");
  validate->add_option("scenario", validate_path, "Scenario JSON")->required();

  RunOptions run_opt;
  uint64_t run_seed = 0;
  auto* run = app.add_subcommand("run", "Simulate one policy over the day");
  run->add_option("scenario", run_opt.scenario, "Scenario JSON")->required();
  run->add_option("--policy", run_opt.policy, "greedy | renewable | rollout")
      ->check(CLI::IsMember({"greedy", "renewable", "rollout"}));
  auto* run_seed_opt = run->add_option("--seed", run_seed, "Override the scenario seed");
  run->add_option("--out", run_opt.out, "Output directory (default $ASEV_OUT or ./asev_out)");
  run->add_option("--currency", run_opt.currency, "Currency symbol for console output");
  run->add_flag("--parallel", run_opt.parallel, "Evaluate rollout candidates in parallel");

  CompareOptions cmp_opt;
  uint64_t cmp_seed = 0;
  auto* compare = app.add_subcommand("compare", "Run several policies with common random numbers");
  compare->add_option("scenario", cmp_opt.scenario, "Scenario JSON")->required();
  compare->add_option("--policies", cmp_opt.policies, "Comma-separated policy list");
  auto* cmp_seed_opt = compare->add_option("--seed", cmp_seed, "Override the scenario seed");
  compare->add_option("--out", cmp_opt.out, "Output directory");
  compare->add_option("--currency", cmp_opt.currency, "Currency symbol for console output");
  compare->add_flag("--parallel", cmp_opt.parallel, "Evaluate rollout candidates in parallel");

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "Compare policies across values of one parameter");
  sweep->add_option("scenario", sweep_opt.scenario, "Scenario JSON")->required();
  sweep->add_option("--param", sweep_opt.param,
                    std::string("Parameter key: ") + asev_sweepable_keys())
      ->required();
  sweep->add_option("--values", sweep_opt.values, "Comma-separated values")->required();
  sweep->add_option("--policies", sweep_opt.policies, "Comma-separated policy list");
  sweep->add_option("--out", sweep_opt.out, "Output directory");
  sweep->add_flag("--parallel", sweep_opt.parallel, "Evaluate rollout candidates in parallel");

  std::string tiers_path, tariff_out;
  int horizon = 288;
  double stage_minutes = 5.0;
  double terminal_price = -1.0;
  auto* tariff = app.add_subcommand("expand-tariff", "Expand tariff tiers into a per-stage price file");
  tariff->add_option("tiers", tiers_path, "CSV with start_hhmm,end_hhmm,price")->required();
  tariff->add_option("--out", tariff_out, "Output CSV (stage,value)")->required();
  tariff->add_option("--horizon", horizon, "Stages per day");
  tariff->add_option("--stage-minutes", stage_minutes, "Stage length in minutes");
  tariff->add_option("--terminal-price", terminal_price,
                     "End-of-day price (default: the 00:00 tier)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*validate) return cmd_validate(validate_path);
  if (*run) {
    if (*run_seed_opt) run_opt.seed = run_seed;
    return cmd_run(run_opt);
  }
  if (*compare) {
    if (*cmp_seed_opt) cmp_opt.seed = cmp_seed;
    return cmd_compare(cmp_opt);
  }
  if (*sweep) return cmd_sweep(sweep_opt);
  if (*tariff) {
    const auto st = asev_expand_tariff(tiers_path.c_str(), tariff_out.c_str(), horizon,
                                       stage_minutes, terminal_price);
    if (st != ASEV_OK) return error_exit(st);
    return kExitOk;
  }
  return kExitInput;
}
