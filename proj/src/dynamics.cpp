#include "dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "errors.hpp"

namespace asev {

void FleetParams::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw InputError(what);
  };
  require(n_ev >= 1, "fleet.n_ev must be at least 1");
  require(capacity_kwh > 0, "fleet.capacity_kwh must be positive");
  require(soc_min >= 0 && soc_min < soc_max && soc_max <= 1,
          "fleet.soc_min/soc_max must satisfy 0 <= soc_min < soc_max <= 1");
  require(charge_power_kw > 0, "fleet.charge_power_kw must be positive");
  require(efficiency > 0 && efficiency <= 1, "fleet.efficiency must lie in (0, 1]");
  require(e_work_kwh_per_stage > 0, "fleet.e_work_kwh_per_stage must be positive");
  require(d_thre >= 0, "fleet.d_thre must be non-negative");
  require(horizon >= 1, "fleet.horizon must be at least 1");
  require(stage_minutes > 0, "fleet.stage_minutes must be positive");
  require(cycles_to_failure > 0, "fleet.cycles_to_failure must be positive");
}

FleetState initial_fleet(const FleetParams& params, double initial_soc) {
  FleetState fleet;
  fleet.asevs.assign(static_cast<std::size_t>(params.n_ev),
                     AsevState{0, initial_soc, params.cycles_to_failure});
  return fleet;
}

bool soc_at_min(double soc, const FleetParams& params) {
  return soc <= params.soc_min + kSocTolerance;
}

bool soc_at_max(double soc, const FleetParams& params) {
  return soc >= params.soc_max - kSocTolerance;
}

std::vector<Control> feasible_controls(const FleetState& fleet, const FleetParams& params,
                                       std::size_t i) {
  const AsevState& a = fleet.asevs.at(i);
  if (a.mode <= -2) return {Control::work};
  if (a.mode == -1) return {Control::idle};
  std::vector<Control> out;
  if (!fleet.pending.empty() && !soc_at_min(a.soc, params)) out.push_back(Control::work);
  out.push_back(Control::idle);
  if (!soc_at_max(a.soc, params)) out.push_back(Control::charge);
  return out;
}

std::vector<int> eligible_asevs(const FleetState& fleet, const FleetParams& params) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < fleet.asevs.size(); ++i) {
    const auto& a = fleet.asevs[i];
    if (a.mode >= 0 && !soc_at_min(a.soc, params)) idx.push_back(static_cast<int>(i));
  }
  std::stable_sort(idx.begin(), idx.end(), [&](int l, int r) {
    return fleet.asevs[l].soc > fleet.asevs[r].soc;
  });
  return idx;
}

std::vector<std::pair<int, std::string>> assign_work(const FleetState& fleet,
                                                     const FleetParams& params) {
  std::vector<std::pair<int, std::string>> out;
  if (fleet.pending.empty()) return out;
  const auto eligible = eligible_asevs(fleet, params);
  const std::size_t n = std::min(eligible.size(), fleet.pending.size());
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.emplace_back(eligible[k], fleet.pending[k].flight_id);
  return out;
}

void enqueue_flight(FleetState& fleet, std::string flight_id, int workload) {
  if (workload < 1) throw std::invalid_argument("flight workload must be at least one stage");
  fleet.pending.push_back(PendingFlight{std::move(flight_id), workload, 0, fleet.stage});
}

double charge_delivered_kwh(double soc, const FleetParams& params) {
  const double headroom = (params.soc_max - soc) * params.capacity_kwh;
  return std::max(0.0, std::min(params.efficiency * params.charge_energy_kwh(), headroom));
}

double charge_drawn_kwh(double soc, const FleetParams& params) {
  return charge_delivered_kwh(soc, params) / params.efficiency;
}

std::optional<StepFailure> advance(FleetState& fleet, const std::vector<ControlDecision>& controls,
                                   const FleetParams& params) {
  if (controls.size() != fleet.asevs.size()) {
    throw std::invalid_argument("one control per ASEV is required");
  }

  // Eligibility is judged on the pre-transition state.
  std::size_t eligible = 0;
  for (const auto& a : fleet.asevs) {
    if (a.mode >= 0 && !soc_at_min(a.soc, params)) ++eligible;
  }

  std::vector<char> served(fleet.pending.size(), 0);
  std::size_t fresh = 0;
  std::optional<StepFailure> failure;

  const double work_soc = params.e_work_kwh_per_stage / params.capacity_kwh;
  const double charge_soc = params.efficiency * params.charge_energy_kwh() / params.capacity_kwh;

  for (std::size_t i = 0; i < fleet.asevs.size(); ++i) {
    AsevState& a = fleet.asevs[i];
    const ControlDecision& c = controls[i];

    if (a.mode <= -2) {
      if (c.u != Control::work || c.assignment) {
        throw std::invalid_argument("work in progress cannot be interrupted");
      }
      a.mode += 1;
    } else if (a.mode == -1) {
      if (c.u != Control::idle || c.assignment) {
        throw std::invalid_argument("a finishing job must roll to idle");
      }
      a.mode = 0;
    } else if (c.u == Control::work) {
      if (!c.assignment) throw std::invalid_argument("fresh work needs a flight assignment");
      if (soc_at_min(a.soc, params)) throw std::invalid_argument("SoC too low to start work");
      std::size_t j = 0;
      while (j < fleet.pending.size() && fleet.pending[j].flight_id != *c.assignment) ++j;
      if (j == fleet.pending.size()) {
        throw std::invalid_argument("assignment to unknown flight '" + *c.assignment + "'");
      }
      if (served[j]) throw std::invalid_argument("flight '" + *c.assignment + "' assigned twice");
      served[j] = 1;
      ++fresh;
      a.mode = -fleet.pending[j].remaining_workload;
    } else {
      if (c.assignment) throw std::invalid_argument("assignment given without work control");
      if (c.u == Control::charge && soc_at_max(a.soc, params)) {
        throw std::invalid_argument("cannot charge a full battery");
      }
      a.mode = static_cast<int>(c.u);
    }

    if (c.u == Control::work) {
      a.soc -= work_soc;
      if (a.soc < -kSocTolerance && !failure) {
        failure = StepFailure{StepFailure::Kind::battery_depleted, fleet.stage,
                              c.assignment.value_or(""),
                              "battery depleted on ASEV " + std::to_string(i)};
      }
    } else if (c.u == Control::charge) {
      if (charge_soc >= params.soc_max - a.soc) {
        a.soc = params.soc_max;
      } else {
        a.soc += charge_soc;
      }
    }
  }

  if (fresh != std::min(eligible, fleet.pending.size())) {
    throw std::invalid_argument("every waiting flight must be served while an ASEV is free");
  }

  std::size_t keep = 0;
  for (std::size_t j = 0; j < fleet.pending.size(); ++j) {
    if (served[j]) continue;
    PendingFlight& f = fleet.pending[j];
    f.delay += 1;
    if (f.delay > params.d_thre && !failure) {
      failure = StepFailure{StepFailure::Kind::delay_threshold, fleet.stage, f.flight_id,
                            "delay threshold violated: flight " + f.flight_id + " waited " +
                                std::to_string(f.delay) + " stages"};
    }
    if (keep != j) fleet.pending[keep] = std::move(f);
    ++keep;
  }
  fleet.pending.resize(keep);
  fleet.stage += 1;
  return failure;
}

FleetState step(const FleetState& fleet, const std::vector<ControlDecision>& controls,
                const FleetParams& params) {
  FleetState next = fleet;
  if (auto failure = advance(next, controls, params)) {
    throw InfeasibleError(failure->message, failure->stage, failure->flight_id);
  }
  return next;
}

}  // namespace asev
