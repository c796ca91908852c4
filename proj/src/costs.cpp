#include "costs.hpp"

#include <algorithm>
#include <string>

#include "errors.hpp"

namespace asev {

void PriceAndRenewableProfiles::validate(int horizon) const {
  if (grid_price.size() != static_cast<std::size_t>(horizon) + 1) {
    throw InputError("grid price profile length " + std::to_string(grid_price.size()) +
                     " ≠ horizon+1 " + std::to_string(horizon + 1));
  }
  if (renewable_energy.size() != static_cast<std::size_t>(horizon)) {
    throw InputError("profile length " + std::to_string(renewable_energy.size()) +
                     " ≠ horizon " + std::to_string(horizon));
  }
  if (!(renewable_price >= 0)) throw InputError("renewable price must be non-negative");
  for (double p : grid_price) {
    if (!(p >= 0)) throw InputError("grid prices must be non-negative");
  }
  for (double e : renewable_energy) {
    if (!(e >= 0)) throw InputError("renewable energy must be non-negative");
  }
}

void DegradationParams::validate() const {
  if (!(a0 >= 0) || !(a1 >= 0)) throw InputError("degradation coefficients must be non-negative");
}

double energy_cost_for_draw(double drawn_kwh, double renewable_kwh, double grid_price,
                            double renewable_price) {
  const double from_renewable = std::min(drawn_kwh, renewable_kwh);
  return renewable_price * from_renewable + grid_price * (drawn_kwh - from_renewable);
}

double stage_energy_cost(int n_charging, double renewable_kwh, double grid_price,
                         double renewable_price, double charge_energy_kwh) {
  return energy_cost_for_draw(n_charging * charge_energy_kwh, renewable_kwh, grid_price,
                              renewable_price);
}

double degradation_cost(double soc, double e_work_kwh, double cycles_to_failure,
                        const DegradationParams& params) {
  if (!(cycles_to_failure > 0)) throw InputError("invalid cycles to failure");
  return e_work_kwh * (params.a0 + params.a1 * (1.0 - soc)) / cycles_to_failure;
}

StageCost stage_cost(const FleetState& fleet, const std::vector<ControlDecision>& controls,
                     const CostModel& model) {
  StageCost cost;
  const auto t = static_cast<std::size_t>(fleet.stage);
  for (std::size_t i = 0; i < fleet.asevs.size(); ++i) {
    const AsevState& a = fleet.asevs[i];
    switch (controls[i].u) {
      case Control::charge:
        cost.drawn_kwh += charge_drawn_kwh(a.soc, model.fleet);
        break;
      case Control::work:
        cost.degradation += degradation_cost(a.soc, model.fleet.e_work_kwh_per_stage,
                                             a.cycles_to_failure, model.degradation);
        break;
      case Control::idle:
        break;
    }
  }
  if (cost.drawn_kwh > 0) {
    cost.energy = energy_cost_for_draw(cost.drawn_kwh, model.profiles.renewable_energy[t],
                                       model.profiles.grid_price[t],
                                       model.profiles.renewable_price);
  }
  return cost;
}

double terminal_cost(const FleetState& fleet, const CostModel& model) {
  double shortfall_kwh = 0.0;
  for (const auto& a : fleet.asevs) {
    shortfall_kwh += std::max(0.0, model.fleet.soc_max - a.soc) * model.fleet.capacity_kwh;
  }
  return model.profiles.terminal_price() * shortfall_kwh;
}

CostBreakdown accumulate(const std::vector<StageCost>& stages, double terminal) {
  CostBreakdown out;
  for (const auto& s : stages) {
    out.energy += s.energy;
    out.degradation += s.degradation;
  }
  out.terminal = terminal;
  out.total = out.energy + out.degradation + out.terminal;
  return out;
}

}  // namespace asev
