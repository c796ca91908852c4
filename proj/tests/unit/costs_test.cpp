#include <gtest/gtest.h>

#include "costs.hpp"
#include "errors.hpp"

namespace asev {
namespace {

CostModel flat_model(int n_ev, int horizon, double grid, double renewable_kwh) {
  CostModel m;
  m.fleet.n_ev = n_ev;
  m.fleet.horizon = horizon;
  m.profiles.grid_price.assign(horizon + 1, grid);
  m.profiles.renewable_energy.assign(horizon, renewable_kwh);
  return m;
}

TEST(EnergyCost, NothingChargingCostsNothing) {
  EXPECT_EQ(stage_energy_cost(0, 10.0, 0.15, 0.04, 22.0 * 5 / 60), 0.0);
}

TEST(EnergyCost, FullyRenewable) {
  EXPECT_NEAR(energy_cost_for_draw(5.5, 10.0, 0.15, 0.04), 0.22, 1e-12);
}

TEST(EnergyCost, RenewableFirstThenGrid) {
  EXPECT_NEAR(energy_cost_for_draw(5.5, 2.0, 0.15, 0.04), 0.605, 1e-12);
}

TEST(EnergyCost, GridOnlyFleetDraw) {
  const double e_c = 22.0 * 5 / 60;
  EXPECT_NEAR(stage_energy_cost(25, 0.0, 0.15, 0.04, e_c), 6.875, 1e-9);
}

TEST(DegradationCost, LinearInDepthOfDischarge) {
  const DegradationParams d{200, 400};
  EXPECT_EQ(degradation_cost(0.5, 0.0, 3000, d), 0.0);
  EXPECT_NEAR(degradation_cost(1.0, 2.0, 3000, d), 2.0 * 200 / 3000, 1e-15);
  EXPECT_NEAR(degradation_cost(0.5, 2.0, 3000, d), 0.266666666667, 1e-9);
}

TEST(DegradationCost, RejectsNonPositiveCycles) {
  try {
    degradation_cost(0.5, 2.0, 0.0, {});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "invalid cycles to failure");
  }
}

TEST(StageCost, AllIdleIsFree) {
  const auto m = flat_model(3, 4, 0.15, 0.0);
  FleetState f;
  f.asevs.assign(3, AsevState{0, 0.5, 3000});
  const auto g = stage_cost(f, std::vector<ControlDecision>(3), m);
  EXPECT_EQ(g.total(), 0.0);
}

TEST(StageCost, ChargersOnRenewablePlusOneWorker) {
  const auto m = flat_model(4, 4, 0.15, 100.0);
  FleetState f;
  f.asevs.assign(4, AsevState{0, 0.5, 3000});
  f.asevs[3].mode = -3;
  std::vector<ControlDecision> c(4, ControlDecision{Control::charge, std::nullopt});
  c[3].u = Control::work;
  const double e_c = 22.0 * 5 / 60;
  const auto g = stage_cost(f, c, m);
  EXPECT_NEAR(g.energy, 3 * e_c * 0.04, 1e-12);
  EXPECT_NEAR(g.degradation, 2.0 * (200 + 400 * 0.5) / 3000, 1e-12);
  EXPECT_NEAR(g.drawn_kwh, 3 * e_c, 1e-12);
}

TEST(StageCost, NearlyFullBatteryIsBilledForWhatItStores) {
  const auto m = flat_model(1, 4, 0.15, 0.0);
  FleetState f;
  f.asevs.assign(1, AsevState{0, 0.79, 3000});
  const auto g = stage_cost(f, {{Control::charge, std::nullopt}}, m);
  EXPECT_NEAR(g.drawn_kwh, 0.01 * 50 / 0.9, 1e-9);
}

TEST(TerminalCost, FullFleetIsFree) {
  const auto m = flat_model(25, 4, 0.15, 0.0);
  FleetState f;
  f.asevs.assign(25, AsevState{0, 0.8, 3000});
  EXPECT_EQ(terminal_cost(f, m), 0.0);
}

TEST(TerminalCost, ShortfallPricedAtTheLastTariff) {
  const auto m = flat_model(25, 4, 0.15, 0.0);
  FleetState f;
  f.asevs.assign(25, AsevState{0, 0.8, 3000});
  f.asevs[0].soc = 0.7;
  EXPECT_NEAR(terminal_cost(f, m), 0.75, 1e-9);
  for (auto& a : f.asevs) a.soc = 0.2;
  EXPECT_NEAR(terminal_cost(f, m), 112.5, 1e-9);
}

TEST(Accumulate, EmptyDayIsZero) {
  const auto c = accumulate({}, 0.0);
  EXPECT_EQ(c.total, 0.0);
}

TEST(Accumulate, PublishedComponentTotals) {
  // Published components are rounded to pence, so their sums may be a penny off.
  const auto greedy = accumulate({StageCost{254.99, 140.71, 0.0}}, 0.0);
  EXPECT_NEAR(greedy.total, 395.71, 0.01 + 1e-9);
  const auto rollout = accumulate({StageCost{168.56, 156.32, 0.0}}, 33.08);
  EXPECT_NEAR(rollout.total, 357.96, 1e-9);
  EXPECT_NEAR(rollout.total, 357.95, 0.01 + 1e-9);
}

TEST(Profiles, LengthMismatchIsReported) {
  PriceAndRenewableProfiles p;
  p.grid_price.assign(289, 0.1);
  p.renewable_energy.assign(287, 0.0);
  try {
    p.validate(288);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "profile length 287 ≠ horizon 288");
  }
}

}  // namespace
}  // namespace asev
