#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "sim.hpp"

namespace asev::testing {

/// Deterministic flight with a fixed number of stages (sigma = 0).
inline FlightEvent fixed_flight(std::string id, int stage, int stages, double dt = 5.0) {
  FlightEvent f;
  f.flight_id = std::move(id);
  f.kind = FlightKind::arrival;
  f.scheduled_stage = stage;
  // Point mass lands on floor(mu/dt); bounds keep the requested stage in the support.
  f.workload = {stages * dt + dt / 2, 0.0, std::max(1, stages - 1) * dt, (stages + 2) * dt};
  return f;
}

/// Small scenario with a two-tier tariff and no PV.
inline Scenario base_scenario(int n_ev, int horizon) {
  Scenario s;
  s.fleet.n_ev = n_ev;
  s.fleet.horizon = horizon;
  s.profiles.grid_price.assign(horizon + 1, 0.15);
  for (int t = 0; t < horizon / 3; ++t) s.profiles.grid_price[t] = 0.07;
  s.profiles.grid_price[horizon] = 0.07;
  s.profiles.renewable_energy.assign(horizon, 0.0);
  s.initial_soc = 0.8;
  return s;
}

inline void sort_schedule(Scenario& s) {
  std::stable_sort(s.schedule.begin(), s.schedule.end(), [](const auto& a, const auto& b) {
    return std::tie(a.scheduled_stage, a.flight_id) < std::tie(b.scheduled_stage, b.flight_id);
  });
}

struct RandomScenarioShape {
  int min_fleet = 3;
  int max_fleet = 10;
  int min_horizon = 48;
  int max_horizon = 96;
  int min_flights = 5;
  int max_flights = 20;
  int max_workload = 5;
};

/// Random deterministic-workload scenario with a two-tier tariff and a PV bump.
inline Scenario random_scenario(std::mt19937_64& rng, const RandomScenarioShape& shape) {
  const auto uniform_int = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const auto uniform_real = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  const int n_ev = uniform_int(shape.min_fleet, shape.max_fleet);
  const int horizon = uniform_int(shape.min_horizon, shape.max_horizon);
  Scenario s = base_scenario(n_ev, horizon);

  const int cheap_end = uniform_int(0, horizon / 2);
  const double cheap = uniform_real(0.05, 0.10);
  const double dear = uniform_real(0.12, 0.25);
  for (int t = 0; t <= horizon; ++t) s.profiles.grid_price[t] = t < cheap_end ? cheap : dear;
  s.profiles.grid_price[horizon] = cheap;
  s.profiles.renewable_price = uniform_real(0.02, 0.05);

  const double peak_kwh = uniform_real(0.0, 2.0 * n_ev);
  const int pv_start = uniform_int(0, horizon / 2);
  const int pv_len = uniform_int(1, horizon - pv_start);
  for (int t = pv_start; t < pv_start + pv_len; ++t) {
    const double x = (t - pv_start + 0.5) / pv_len;
    s.profiles.renewable_energy[t] = peak_kwh * std::pow(std::sin(M_PI * x), 2);
  }

  s.initial_soc = uniform_real(0.5, 0.8);
  s.fleet.e_work_kwh_per_stage = uniform_real(1.0, 3.0);
  s.degradation.a0 = uniform_real(50, 300);
  s.degradation.a1 = uniform_real(100, 500);
  s.seed = rng();

  const int flights = uniform_int(shape.min_flights, shape.max_flights);
  const int last_stage = std::max(0, horizon - shape.max_workload - 2);
  for (int j = 0; j < flights; ++j) {
    s.schedule.push_back(fixed_flight("F" + std::to_string(j), uniform_int(0, last_stage),
                                      uniform_int(1, shape.max_workload)));
  }
  sort_schedule(s);
  return s;
}

/// Closed-loop base heuristic, or nullopt when neither heuristic is feasible from the start.
inline std::optional<PolicyKind> base_policy(const Scenario& s) {
  try {
    return selected_base_policy(s);
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
}

}  // namespace asev::testing
