#include "policies.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "errors.hpp"

namespace asev {
namespace {

// Free ASEVs (not working, not assigned) that may still charge, lowest SoC first.
std::vector<int> chargeable_by_soc(const FleetState& fleet,
                                   const std::vector<ControlDecision>& controls,
                                   const FleetParams& params) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < fleet.asevs.size(); ++i) {
    const auto& a = fleet.asevs[i];
    if (a.mode >= 0 && controls[i].u == Control::idle && !soc_at_max(a.soc, params)) {
      idx.push_back(static_cast<int>(i));
    }
  }
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int l, int r) { return fleet.asevs[l].soc < fleet.asevs[r].soc; });
  return idx;
}

using Rule = std::vector<ControlDecision> (*)(const FleetState&, const CostModel&);

PolicyOutcome simulate(Rule rule, const FleetState& start, const CostModel& model,
                       std::span<const UpcomingFlight> future, bool record) {
  PolicyOutcome out;
  if (record) out.trajectory.emplace();
  FleetState s = start;
  auto next_flight = std::find_if(future.begin(), future.end(),
                                  [&](const UpcomingFlight& f) { return f.stage > start.stage; });
  double cost = 0.0;
  const int horizon = model.fleet.horizon;

  while (s.stage < horizon) {
    auto controls = rule(s, model);
    const StageCost g = stage_cost(s, controls, model);
    cost += g.total();
    if (s.stage == start.stage) out.first_stage_controls = controls;
    auto failure = advance(s, controls, model.fleet);
    if (record) out.trajectory->push_back({std::move(controls), g});
    if (failure) {
      out.failure = std::move(failure);
      return out;
    }
    while (next_flight != future.end() && next_flight->stage <= s.stage) {
      if (next_flight->stage == s.stage) {
        enqueue_flight(s, next_flight->flight_id, next_flight->workload);
      }
      ++next_flight;
    }
  }
  out.feasible = true;
  out.cost_to_go = cost + terminal_cost(s, model);
  return out;
}

// Lexicographic order on the control values, used for deterministic ties.
bool lex_less(const std::vector<ControlDecision>& a, const std::vector<ControlDecision>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].u != b[i].u) return static_cast<int>(a[i].u) < static_cast<int>(b[i].u);
  }
  return false;
}

int count_chargers(const std::vector<ControlDecision>& controls) {
  return static_cast<int>(std::count_if(controls.begin(), controls.end(),
                                        [](const auto& c) { return c.u == Control::charge; }));
}

}  // namespace

std::string_view to_string(BaseHeuristic h) {
  return h == BaseHeuristic::renewable_matching ? "renewable" : "greedy";
}

std::string_view to_string(PolicyKind p) {
  switch (p) {
    case PolicyKind::greedy:
      return "greedy";
    case PolicyKind::renewable:
      return "renewable";
    case PolicyKind::rollout:
      return "rollout";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  if (name == "greedy") return PolicyKind::greedy;
  if (name == "renewable") return PolicyKind::renewable;
  if (name == "rollout") return PolicyKind::rollout;
  return std::nullopt;
}

void RolloutConfig::validate() const {
  if (workload_mode == WorkloadMode::monte_carlo && samples < 1) {
    throw InputError("rollout.samples must be at least 1 in monte-carlo mode");
  }
}

std::vector<ControlDecision> forced_and_assigned_controls(const FleetState& fleet,
                                                          const FleetParams& params) {
  std::vector<ControlDecision> controls(fleet.asevs.size());
  for (std::size_t i = 0; i < fleet.asevs.size(); ++i) {
    if (fleet.asevs[i].mode <= -2) controls[i].u = Control::work;
  }
  for (auto& [asev, flight] : assign_work(fleet, params)) {
    controls[asev].u = Control::work;
    controls[asev].assignment = std::move(flight);
  }
  return controls;
}

std::vector<ControlDecision> renewable_matching_controls(const FleetState& fleet,
                                                         const CostModel& model) {
  auto controls = forced_and_assigned_controls(fleet, model.fleet);
  const double available = model.profiles.renewable_energy[static_cast<std::size_t>(fleet.stage)];
  if (available > 0) {
    double drawn = 0.0;
    for (int i : chargeable_by_soc(fleet, controls, model.fleet)) {
      controls[i].u = Control::charge;
      drawn += charge_drawn_kwh(fleet.asevs[i].soc, model.fleet);
      if (drawn >= available) break;
    }
  }
  return controls;
}

std::vector<ControlDecision> greedy_charging_controls(const FleetState& fleet,
                                                      const CostModel& model) {
  auto controls = forced_and_assigned_controls(fleet, model.fleet);
  for (int i : chargeable_by_soc(fleet, controls, model.fleet)) controls[i].u = Control::charge;
  return controls;
}

PolicyOutcome heuristic_renewable_matching(const FleetState& start, const CostModel& model,
                                           std::span<const UpcomingFlight> future,
                                           bool record_trajectory) {
  return simulate(&renewable_matching_controls, start, model, future, record_trajectory);
}

PolicyOutcome heuristic_greedy_charging(const FleetState& start, const CostModel& model,
                                        std::span<const UpcomingFlight> future,
                                        bool record_trajectory) {
  return simulate(&greedy_charging_controls, start, model, future, record_trajectory);
}

BaseSelection select_base_heuristic(const FleetState& start, const CostModel& model,
                                    std::span<const UpcomingFlight> future) {
  auto renewable = heuristic_renewable_matching(start, model, future);
  auto greedy = heuristic_greedy_charging(start, model, future);
  if (renewable.feasible && (!greedy.feasible || *renewable.cost_to_go < *greedy.cost_to_go)) {
    return {BaseHeuristic::renewable_matching, std::move(renewable)};
  }
  if (greedy.feasible) return {BaseHeuristic::greedy_charging, std::move(greedy)};
  const auto& f = greedy.failure ? *greedy.failure : *renewable.failure;
  throw InfeasibleError("no feasible base heuristic", f.stage, f.flight_id);
}

std::optional<double> base_cost_to_go(const FleetState& start, const CostModel& model,
                                      std::span<const UpcomingFlight> future) {
  const auto renewable = heuristic_renewable_matching(start, model, future);
  const auto greedy = heuristic_greedy_charging(start, model, future);
  if (renewable.feasible && greedy.feasible) {
    return std::min(*renewable.cost_to_go, *greedy.cost_to_go);
  }
  if (renewable.feasible) return renewable.cost_to_go;
  if (greedy.feasible) return greedy.cost_to_go;
  return std::nullopt;
}

std::vector<std::vector<ControlDecision>> rollout_candidates(const FleetState& fleet,
                                                             const FleetParams& params) {
  auto base = forced_and_assigned_controls(fleet, params);
  const auto order = chargeable_by_soc(fleet, base, params);
  std::vector<std::vector<ControlDecision>> out;
  out.reserve(order.size() + 1);
  out.push_back(base);
  for (int i : order) {
    base[i].u = Control::charge;
    out.push_back(base);
  }
  return out;
}

std::vector<std::vector<ControlDecision>> all_joint_controls(const FleetState& fleet,
                                                             const FleetParams& params) {
  const std::size_t n = fleet.asevs.size();
  std::vector<ControlDecision> base(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (fleet.asevs[i].mode <= -2) base[i].u = Control::work;
  }
  std::vector<int> eligible = eligible_asevs(fleet, params);
  std::sort(eligible.begin(), eligible.end());
  const std::size_t m = std::min(eligible.size(), fleet.pending.size());

  std::vector<std::vector<ControlDecision>> out;
  std::vector<ControlDecision> current = base;
  std::vector<char> used(n, 0);

  // Free ASEVs choose idle or charge once the assignments are fixed.
  const auto fill_free = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(current);
      return;
    }
    const auto& a = fleet.asevs[i];
    if (a.mode < 0 || used[i]) {
      self(self, i + 1);
      return;
    }
    current[i] = ControlDecision{};
    self(self, i + 1);
    if (!soc_at_max(a.soc, params)) {
      current[i].u = Control::charge;
      self(self, i + 1);
      current[i] = ControlDecision{};
    }
  };

  // Flight j (FIFO) is matched to any still-unused eligible ASEV.
  const auto assign = [&](auto&& self, std::size_t j) -> void {
    if (j == m) {
      fill_free(fill_free, 0);
      return;
    }
    for (int e : eligible) {
      if (used[e]) continue;
      used[e] = 1;
      current[e] = ControlDecision{Control::work, fleet.pending[j].flight_id};
      self(self, j + 1);
      current[e] = ControlDecision{};
      used[e] = 0;
    }
  };
  assign(assign, 0);
  return out;
}

std::vector<UpcomingFlight> expected_flights(std::span<const ForecastFlight> future) {
  std::vector<UpcomingFlight> out;
  out.reserve(future.size());
  for (const auto& f : future) out.push_back({f.stage, f.flight_id, f.expected_workload});
  return out;
}

RolloutDecision rollout_decide(const FleetState& current, const CostModel& model,
                               std::span<const ForecastFlight> future,
                               const RolloutConfig& config) {
  config.validate();
  if (current.stage >= model.fleet.horizon) {
    throw std::invalid_argument("rollout_decide called at or after the final stage");
  }
  if (config.full_enumeration && model.fleet.n_ev > kFullEnumerationMaxFleet) {
    throw InputError("full enumeration is limited to fleets of at most 4 ASEVs");
  }

  // Workload scenarios used inside the cost-to-go evaluation.
  std::vector<std::vector<UpcomingFlight>> scenarios;
  if (config.workload_mode == RolloutConfig::WorkloadMode::certainty_equivalent) {
    scenarios.push_back(expected_flights(future));
  } else {
    for (int m = 0; m < config.samples; ++m) {
      std::vector<UpcomingFlight> drawn;
      drawn.reserve(future.size());
      for (const auto& f : future) {
        auto rng = RandomStream::keyed(config.seed, f.flight_id, static_cast<std::uint64_t>(m) + 1);
        drawn.push_back({f.stage, f.flight_id, sample(f.dist, rng)});
      }
      scenarios.push_back(std::move(drawn));
    }
  }

  const auto candidates = config.full_enumeration ? all_joint_controls(current, model.fleet)
                                                  : rollout_candidates(current, model.fleet);

  struct Evaluation {
    bool feasible = false;
    double score = 0.0;
    double drawn_kwh = 0.0;
  };
  std::vector<Evaluation> results(candidates.size());

  const auto evaluate = [&](std::size_t c) {
    Evaluation& r = results[c];
    const StageCost g = stage_cost(current, candidates[c], model);
    r.drawn_kwh = g.drawn_kwh;
    FleetState next = current;
    if (advance(next, candidates[c], model.fleet)) return;
    double sum = 0.0;
    for (const auto& flights : scenarios) {
      FleetState s = next;
      auto it = std::lower_bound(flights.begin(), flights.end(), next.stage,
                                 [](const UpcomingFlight& f, int stage) { return f.stage < stage; });
      for (; it != flights.end() && it->stage == next.stage; ++it) {
        enqueue_flight(s, it->flight_id, it->workload);
      }
      const auto j = base_cost_to_go(s, model, std::span(it, flights.end()));
      if (!j) return;
      sum += *j;
    }
    r.feasible = true;
    r.score = g.total() + sum / static_cast<double>(scenarios.size());
  };

  const unsigned workers =
      config.parallel_eval
          ? std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                               static_cast<unsigned>(candidates.size()))
          : 1u;
  if (workers > 1) {
    std::atomic<std::size_t> next_index{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next_index++; c < candidates.size(); c = next_index++) evaluate(c);
      });
    }
  } else {
    for (std::size_t c = 0; c < candidates.size(); ++c) evaluate(c);
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (r.feasible) best = std::min(best, r.score);
  }
  if (best == std::numeric_limits<double>::infinity()) {
    const std::string flight = current.pending.empty() ? "" : current.pending.front().flight_id;
    throw InfeasibleError("all candidates infeasible at stage " + std::to_string(current.stage),
                          current.stage, flight);
  }

  // Ties: more chargers while renewable energy would otherwise be curtailed,
  // then the lexicographically smallest control vector.
  const double tie = 1e-9 * std::max(1.0, std::abs(best));
  const double renewable =
      model.profiles.renewable_energy[static_cast<std::size_t>(current.stage)];
  std::optional<std::size_t> chosen;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (!results[c].feasible || results[c].score > best + tie) continue;
    if (!chosen) {
      chosen = c;
      continue;
    }
    const auto& cur = candidates[*chosen];
    const auto& alt = candidates[c];
    const bool surplus = std::min(results[*chosen].drawn_kwh, results[c].drawn_kwh) < renewable;
    const int cur_k = count_chargers(cur);
    const int alt_k = count_chargers(alt);
    if (surplus && alt_k != cur_k) {
      if (alt_k > cur_k) chosen = c;
    } else if (lex_less(alt, cur)) {
      chosen = c;
    }
  }

  return {candidates[*chosen], results[*chosen].score, candidates.size()};
}

}  // namespace asev
