#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sim.hpp"

namespace asev {

struct Diagnostic {
  std::string key;      // JSON-style path of the offending entry, e.g. "fleet.n_ev"
  std::string message;
  std::string remedy;

  std::string render() const;
};

struct TariffTier {
  int start_stage = 0;
  int end_stage = 0;  // exclusive
  double price = 0.0;
};

/// Reads `start_hhmm,end_hhmm,price` rows.
std::vector<TariffTier> parse_tiers(std::string_view content, double stage_minutes);

/// Expands tiers to horizon+1 prices. Stage `horizon` (24:00) wraps to the
/// tier covering 00:00 unless `terminal_price` is given.
std::vector<double> expand_tiers(const std::vector<TariffTier>& tiers, int horizon,
                                 std::optional<double> terminal_price = std::nullopt);

/// `stage,value` rows with an optional header; stages must run 0, 1, 2, ...
std::vector<double> parse_stage_values(std::string_view content, std::string_view what);

std::string format_stage_values(const std::vector<double>& values, int decimals);

/// Loaded scenario plus everything needed to re-derive sweepable quantities.
struct LoadedScenario {
  Scenario scenario;
  std::vector<double> renewable_kw;  // unscaled PV power per stage
  double pv_scale = 1.0;
  std::optional<PolicyKind> default_policy;
  std::vector<PolicyKind> default_policies;
};

/// Parses and validates; throws InputError listing every diagnostic.
LoadedScenario load_scenario(const std::filesystem::path& path);

/// Every violation found in the scenario (empty when clean).
std::vector<Diagnostic> validate_scenario_file(const std::filesystem::path& path);

std::vector<std::string> sweepable_keys();

/// Sets a numeric parameter by key; throws InputError for unknown keys.
void set_parameter(LoadedScenario& loaded, std::string_view key, double value);

}  // namespace asev
