#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "costs.hpp"
#include "dynamics.hpp"
#include "policies.hpp"
#include "workload.hpp"

namespace asev {

struct ScheduleEvent {
  enum class Kind { cancellation };
  Kind kind = Kind::cancellation;
  std::string flight_id;
  int announce_stage = 0;
};

struct Scenario {
  FleetParams fleet;
  PriceAndRenewableProfiles profiles;
  DegradationParams degradation;
  std::vector<FlightEvent> schedule;  // sorted by (stage, flight_id)
  std::vector<ScheduleEvent> events;
  std::uint64_t seed = 0;
  double initial_soc = 0.8;
  RolloutConfig rollout;

  CostModel cost_model() const { return {fleet, profiles, degradation}; }

  /// Throws InputError on the first violated invariant.
  void validate() const;
};

enum class ActivityMode { idle, charging, working };
std::string_view to_string(ActivityMode m);

struct TimelineInterval {
  int start = 0;  // inclusive stage
  int end = 0;    // exclusive stage
  ActivityMode mode = ActivityMode::idle;
};

struct ServiceRecord {
  std::string flight_id;
  int asev = 0;
  int start_stage = 0;
  int delay = 0;
  int workload = 0;
};

struct Infeasibility {
  int stage = 0;
  std::string flight_id;
  std::string message;
};

struct SimReport {
  PolicyKind policy = PolicyKind::greedy;
  bool feasible = false;
  std::optional<Infeasibility> infeasibility;
  CostBreakdown cost;
  std::vector<StageCost> stage_costs;
  std::vector<double> load_curve;  // kWh drawn per stage, fleet total
  std::vector<std::vector<TimelineInterval>> timelines;
  std::vector<ServiceRecord> service_log;
  std::vector<std::string> warnings;
};

/// Realized workload of one flight: substream keyed by (seed, flight_id).
int realized_workload(const FlightEvent& flight, std::uint64_t seed, double stage_minutes);

/// Closed-loop day: events, arrivals, decision, transition, per stage.
SimReport run(const Scenario& scenario, PolicyKind policy);

/// Runs every policy on the same scenario and seed.
std::vector<SimReport> compare(const Scenario& scenario, std::span<const PolicyKind> policies);

/// Same-seed closed-loop heuristic run from stage 0, chosen by comparing both
/// heuristics' certainty-equivalent forecasts from the initial state.
PolicyKind selected_base_policy(const Scenario& scenario);

}  // namespace asev
