#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "errors.hpp"

namespace asev {
namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

class Solver {
 public:
  explicit Solver(const Scenario& scenario) : model_(scenario.cost_model()) {
    for (std::size_t k = 0; k < scenario.schedule.size(); ++k) {
      const auto& f = scenario.schedule[k];
      index_[f.flight_id] = static_cast<int>(k);
      arrivals_.emplace(f.scheduled_stage,
                        UpcomingFlight{f.scheduled_stage, f.flight_id,
                                       realized_workload(f, scenario.seed,
                                                         scenario.fleet.stage_minutes)});
    }
  }

  void admit(FleetState& s) const {
    const auto [lo, hi] = arrivals_.equal_range(s.stage);
    for (auto it = lo; it != hi; ++it) enqueue_flight(s, it->second.flight_id, it->second.workload);
  }

  double value(const FleetState& s) {
    if (s.stage >= model_.fleet.horizon) return terminal_cost(s, model_);
    const std::string k = key(s);
    if (const auto hit = memo_.find(k); hit != memo_.end()) return hit->second;

    double best = kInfeasible;
    for (const auto& controls : all_joint_controls(s, model_.fleet)) {
      FleetState next = s;
      if (advance(next, controls, model_.fleet)) continue;
      admit(next);
      const double rest = value(next);
      if (rest == kInfeasible) continue;
      best = std::min(best, stage_cost(s, controls, model_).total() + rest);
    }
    memo_.emplace(k, best);
    return best;
  }

 private:
  // SoC is a lattice value; rounding to 1e-9 merges float paths to the same point.
  // ASEVs are interchangeable, so the key uses their states in sorted order.
  std::string key(const FleetState& s) const {
    std::string k;
    const auto put = [&k](long long v) {
      k.append(reinterpret_cast<const char*>(&v), sizeof v);
    };
    put(s.stage);
    std::vector<std::pair<long long, long long>> asevs;
    asevs.reserve(s.asevs.size());
    for (const auto& a : s.asevs) asevs.emplace_back(a.mode, std::llround(a.soc * 1e9));
    std::sort(asevs.begin(), asevs.end());
    for (const auto& [mode, soc] : asevs) {
      put(mode);
      put(soc);
    }
    for (const auto& p : s.pending) {
      put(index_.at(p.flight_id));
      put(p.remaining_workload);
      put(p.delay);
    }
    return k;
  }

  CostModel model_;
  std::map<std::string, int, std::less<>> index_;
  std::multimap<int, UpcomingFlight> arrivals_;
  std::unordered_map<std::string, double> memo_;
};

}  // namespace

double exact_dp_oracle(const Scenario& scenario) {
  scenario.validate();
  if (scenario.fleet.n_ev > kOracleMaxFleet || scenario.fleet.horizon > kOracleMaxHorizon) {
    throw InputError("instance too large");
  }
  for (const auto& f : scenario.schedule) {
    if (f.workload.sigma != 0.0) {
      throw InputError("oracle requires deterministic workloads (sigma = 0)");
    }
  }
  if (!scenario.events.empty()) throw InputError("oracle does not support schedule events");

  Solver solver(scenario);
  FleetState start = initial_fleet(scenario.fleet, scenario.initial_soc);
  solver.admit(start);
  const double best = solver.value(start);
  if (best == kInfeasible) throw InfeasibleError("no feasible control sequence", 0, "");
  return best;
}

}  // namespace asev
