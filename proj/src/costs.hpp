#pragma once

#include <vector>

#include "dynamics.hpp"

namespace asev {

/// Tariffs and renewable supply over the day. grid_price has horizon+1
/// entries; the last one prices the end-of-day shortfall.
struct PriceAndRenewableProfiles {
  std::vector<double> grid_price;        // £/kWh
  double renewable_price = 0.04;         // £/kWh
  std::vector<double> renewable_energy;  // kWh available per stage

  double terminal_price() const { return grid_price.back(); }
  void validate(int horizon) const;
};

/// Linear degradation model: e_w * (a0 + a1 * (1 - soc)) / cycles_to_failure.
struct DegradationParams {
  double a0 = 200.0;
  double a1 = 400.0;
  void validate() const;
};

struct CostBreakdown {
  double energy = 0.0;
  double degradation = 0.0;
  double terminal = 0.0;
  double total = 0.0;
};

/// Everything a policy needs to price a trajectory.
struct CostModel {
  FleetParams fleet;
  PriceAndRenewableProfiles profiles;
  DegradationParams degradation;
};

/// Renewable energy is consumed first, the remainder is bought from the grid.
double energy_cost_for_draw(double drawn_kwh, double renewable_kwh, double grid_price,
                            double renewable_price);

double stage_energy_cost(int n_charging, double renewable_kwh, double grid_price,
                         double renewable_price, double charge_energy_kwh);

double degradation_cost(double soc, double e_work_kwh, double cycles_to_failure,
                        const DegradationParams& params);

struct StageCost {
  double energy = 0.0;
  double degradation = 0.0;
  double drawn_kwh = 0.0;
  double total() const { return energy + degradation; }
};

StageCost stage_cost(const FleetState& fleet, const std::vector<ControlDecision>& controls,
                     const CostModel& model);

double terminal_cost(const FleetState& fleet, const CostModel& model);

CostBreakdown accumulate(const std::vector<StageCost>& stages, double terminal);

}  // namespace asev
