#include "sim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "errors.hpp"

namespace asev {
namespace {

std::vector<ForecastFlight> build_forecast(const Scenario& scenario) {
  std::vector<ForecastFlight> out;
  out.reserve(scenario.schedule.size());
  for (const auto& f : scenario.schedule) {
    ForecastFlight ff;
    ff.stage = f.scheduled_stage;
    ff.flight_id = f.flight_id;
    ff.dist = discretize(f.workload, scenario.fleet.stage_minutes);
    ff.expected_workload = expected_stages(ff.dist);
    out.push_back(std::move(ff));
  }
  return out;
}

// Appends one stage's mode to a run-length encoded timeline.
void extend_timeline(std::vector<TimelineInterval>& line, int stage, ActivityMode mode) {
  if (!line.empty() && line.back().mode == mode && line.back().end == stage) {
    line.back().end = stage + 1;
  } else {
    line.push_back({stage, stage + 1, mode});
  }
}

}  // namespace

std::string_view to_string(ActivityMode m) {
  switch (m) {
    case ActivityMode::idle:
      return "idle";
    case ActivityMode::charging:
      return "charging";
    case ActivityMode::working:
      return "working";
  }
  return "?";
}

void Scenario::validate() const {
  fleet.validate();
  profiles.validate(fleet.horizon);
  degradation.validate();
  rollout.validate();
  if (!(initial_soc > 0 && initial_soc <= fleet.soc_max + kSocTolerance)) {
    throw InputError("initial_soc must lie in (0, soc_max]");
  }
  std::set<std::string, std::less<>> ids;
  std::map<std::string, int, std::less<>> stage_of;
  for (const auto& f : schedule) {
    if (f.scheduled_stage < 0 || f.scheduled_stage >= fleet.horizon) {
      throw InputError("flight " + f.flight_id + ": stage out of horizon");
    }
    if (!ids.insert(f.flight_id).second) {
      throw InputError("duplicate flight_id '" + f.flight_id + "'");
    }
    validate_spec(f.workload, fleet.stage_minutes);
    stage_of[f.flight_id] = f.scheduled_stage;
  }
  for (const auto& e : events) {
    const auto it = stage_of.find(e.flight_id);
    if (it == stage_of.end()) {
      throw InputError("event references unknown flight '" + e.flight_id + "'");
    }
    if (e.announce_stage < 0 || e.announce_stage > it->second) {
      throw InputError("cancellation of '" + e.flight_id +
                       "' must be announced no later than its scheduled stage");
    }
  }
}

int realized_workload(const FlightEvent& flight, std::uint64_t seed, double stage_minutes) {
  auto rng = RandomStream::keyed(seed, flight.flight_id, 0);
  return sample(discretize(flight.workload, stage_minutes), rng);
}

PolicyKind selected_base_policy(const Scenario& scenario) {
  const CostModel model = scenario.cost_model();
  FleetState start = initial_fleet(scenario.fleet, scenario.initial_soc);
  const auto forecast = build_forecast(scenario);
  std::vector<UpcomingFlight> future;
  for (const auto& f : forecast) {
    if (f.stage == 0) {
      enqueue_flight(start, f.flight_id, f.expected_workload);
    } else {
      future.push_back({f.stage, f.flight_id, f.expected_workload});
    }
  }
  const auto sel = select_base_heuristic(start, model, future);
  return sel.chosen == BaseHeuristic::greedy_charging ? PolicyKind::greedy : PolicyKind::renewable;
}

SimReport run(const Scenario& scenario, PolicyKind policy) {
  scenario.validate();
  const CostModel model = scenario.cost_model();
  const FleetParams& params = scenario.fleet;
  const int horizon = params.horizon;

  SimReport report;
  report.policy = policy;
  report.timelines.resize(static_cast<std::size_t>(params.n_ev));
  report.load_curve.reserve(static_cast<std::size_t>(horizon));

  std::vector<ForecastFlight> forecast = build_forecast(scenario);
  std::map<std::string, int, std::less<>> realized;
  for (const auto& f : scenario.schedule) {
    realized[f.flight_id] = realized_workload(f, scenario.seed, params.stage_minutes);
  }
  std::set<std::string, std::less<>> served;

  RolloutConfig rollout = scenario.rollout;
  rollout.seed = scenario.seed;

  FleetState fleet = initial_fleet(params, scenario.initial_soc);
  std::size_t next_arrival = 0;  // index into forecast

  const auto fail = [&](int stage, std::string flight, std::string message) {
    report.feasible = false;
    report.infeasibility = Infeasibility{stage, std::move(flight), std::move(message)};
    report.cost = accumulate(report.stage_costs, 0.0);
    return report;
  };

  for (int t = 0; t < horizon; ++t) {
    for (const auto& e : scenario.events) {
      if (e.announce_stage != t) continue;
      auto pending = std::find_if(fleet.pending.begin(), fleet.pending.end(),
                                  [&](const PendingFlight& p) { return p.flight_id == e.flight_id; });
      auto upcoming = std::find_if(forecast.begin() + static_cast<std::ptrdiff_t>(next_arrival),
                                   forecast.end(),
                                   [&](const ForecastFlight& f) { return f.flight_id == e.flight_id; });
      if (pending != fleet.pending.end()) {
        fleet.pending.erase(pending);
      } else if (upcoming != forecast.end()) {
        forecast.erase(upcoming);
      } else {
        report.warnings.push_back("cancellation of " + e.flight_id + " at stage " +
                                  std::to_string(t) + " ignored: already served");
      }
    }

    while (next_arrival < forecast.size() && forecast[next_arrival].stage == t) {
      const auto& f = forecast[next_arrival];
      enqueue_flight(fleet, f.flight_id, realized.at(f.flight_id));
      ++next_arrival;
    }

    std::vector<ControlDecision> controls;
    switch (policy) {
      case PolicyKind::greedy:
        controls = greedy_charging_controls(fleet, model);
        break;
      case PolicyKind::renewable:
        controls = renewable_matching_controls(fleet, model);
        break;
      case PolicyKind::rollout:
        try {
          controls = rollout_decide(fleet, model,
                                    std::span(forecast).subspan(next_arrival), rollout)
                         .controls;
        } catch (const InfeasibleError& e) {
          return fail(e.stage(), e.flight_id(), e.what());
        }
        break;
    }

    // Every fresh job goes to a highest-SoC eligible ASEV.
    double lowest_assigned = 2.0;
    double highest_unassigned = -1.0;
    for (int e : eligible_asevs(fleet, params)) {
      if (!controls[e].assignment) highest_unassigned = std::max(highest_unassigned, fleet.asevs[e].soc);
    }
    for (std::size_t i = 0; i < controls.size(); ++i) {
      if (!controls[i].assignment) continue;
      const auto& id = *controls[i].assignment;
      const auto flight = std::find_if(fleet.pending.begin(), fleet.pending.end(),
                                       [&](const PendingFlight& p) { return p.flight_id == id; });
      if (flight == fleet.pending.end() || !served.insert(id).second) {
        throw std::logic_error("flight " + id + " assigned twice");
      }
      lowest_assigned = std::min(lowest_assigned, fleet.asevs[i].soc);
      report.service_log.push_back(
          {id, static_cast<int>(i), t, flight->delay, flight->remaining_workload});
    }
    if (lowest_assigned < highest_unassigned) {
      throw std::logic_error("work assigned past a higher-SoC ASEV at stage " + std::to_string(t));
    }

    const StageCost g = stage_cost(fleet, controls, model);
    report.stage_costs.push_back(g);
    report.load_curve.push_back(g.drawn_kwh);
    for (std::size_t i = 0; i < controls.size(); ++i) {
      ActivityMode mode = ActivityMode::idle;
      if (fleet.asevs[i].mode < 0 || controls[i].u == Control::work) {
        mode = ActivityMode::working;
      } else if (controls[i].u == Control::charge) {
        mode = ActivityMode::charging;
      }
      extend_timeline(report.timelines[i], t, mode);
    }

    if (auto failure = advance(fleet, controls, params)) {
      return fail(failure->stage, failure->flight_id, failure->message);
    }
  }

  report.feasible = true;
  report.cost = accumulate(report.stage_costs, terminal_cost(fleet, model));
  return report;
}

std::vector<SimReport> compare(const Scenario& scenario, std::span<const PolicyKind> policies) {
  std::vector<SimReport> out;
  out.reserve(policies.size());
  for (PolicyKind p : policies) out.push_back(run(scenario, p));
  return out;
}

}  // namespace asev
