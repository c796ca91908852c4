#include <gtest/gtest.h>

#include "dynamics.hpp"
#include "errors.hpp"

namespace asev {
namespace {

FleetState fleet_of(std::initializer_list<AsevState> asevs) {
  FleetState f;
  f.asevs = asevs;
  return f;
}

std::vector<ControlDecision> all(std::size_t n, Control u) {
  return std::vector<ControlDecision>(n, ControlDecision{u, std::nullopt});
}

TEST(FeasibleControls, WorkInProgressIsForced) {
  const FleetParams p;
  const auto f = fleet_of({{-3, 0.5, 3000}});
  EXPECT_EQ(feasible_controls(f, p, 0), std::vector<Control>{Control::work});
}

TEST(FeasibleControls, FinishingJobRollsToIdle) {
  const FleetParams p;
  const auto f = fleet_of({{-1, 0.5, 3000}});
  EXPECT_EQ(feasible_controls(f, p, 0), std::vector<Control>{Control::idle});
}

TEST(FeasibleControls, DepletedBatteryCannotWork) {
  const FleetParams p;
  auto f = fleet_of({{0, 0.2, 3000}});
  enqueue_flight(f, "X", 3);
  EXPECT_EQ(feasible_controls(f, p, 0), (std::vector<Control>{Control::idle, Control::charge}));
}

TEST(FeasibleControls, FullBatteryWithoutWorkCanOnlyIdle) {
  const FleetParams p;
  const auto f = fleet_of({{0, 0.8, 3000}});
  EXPECT_EQ(feasible_controls(f, p, 0), std::vector<Control>{Control::idle});
}

TEST(FeasibleControls, AllThreeWhenWorkIsWaiting) {
  const FleetParams p;
  auto f = fleet_of({{1, 0.5, 3000}});
  enqueue_flight(f, "X", 3);
  EXPECT_EQ(feasible_controls(f, p, 0),
            (std::vector<Control>{Control::work, Control::idle, Control::charge}));
}

TEST(Step, ChargingClampsExactlyAtMaximum) {
  const FleetParams p;
  const auto f = fleet_of({{0, 0.8 - 0.001, 3000}});
  const auto next = step(f, all(1, Control::charge), p);
  EXPECT_EQ(next.asevs[0].soc, 0.8);
  EXPECT_EQ(next.asevs[0].mode, 1);
}

TEST(Step, ChargingAddsEfficiencyTimesEnergy) {
  const FleetParams p;
  const auto next = step(fleet_of({{0, 0.5, 3000}}), all(1, Control::charge), p);
  // 0.9 * 22 kW * 5/60 h / 50 kWh = 0.033
  EXPECT_NEAR(next.asevs[0].soc, 0.533, 1e-12);
}

TEST(Step, IdleKeepsTheAsevUnchanged) {
  const FleetParams p;
  const auto f = fleet_of({{0, 0.6, 2500}});
  const auto next = step(f, all(1, Control::idle), p);
  EXPECT_EQ(next.asevs, f.asevs);
  EXPECT_EQ(next.stage, f.stage + 1);
}

TEST(Step, WorkDischargesOneStageOfEnergy) {
  const FleetParams p;
  auto f = fleet_of({{0, 0.5, 3000}});
  enqueue_flight(f, "X", 3);
  const auto next = step(f, {{Control::work, "X"}}, p);
  EXPECT_NEAR(next.asevs[0].soc, 0.46, 1e-12);
  EXPECT_EQ(next.asevs[0].mode, -3);
  EXPECT_TRUE(next.pending.empty());
}

TEST(Step, JobRunsForItsWorkloadThenIdles) {
  const FleetParams p;
  auto f = fleet_of({{0, 0.8, 3000}});
  enqueue_flight(f, "X", 3);
  f = step(f, {{Control::work, "X"}}, p);
  int steps = 0;
  while (f.asevs[0].mode < 0) {
    const auto controls = feasible_controls(f, p, 0);
    ASSERT_EQ(controls.size(), 1u);
    f = step(f, all(1, controls[0]), p);
    ++steps;
  }
  EXPECT_EQ(steps, 3);
  EXPECT_NEAR(f.asevs[0].soc, 0.8 - 3 * 0.04, 1e-12);
}

TEST(Step, UnservedFlightBeyondThresholdIsInfeasible) {
  FleetParams p;
  p.d_thre = 1;
  auto f = fleet_of({{-3, 0.5, 3000}});
  enqueue_flight(f, "X", 3);
  f = step(f, all(1, Control::work), p);
  EXPECT_EQ(f.pending[0].delay, 1);
  try {
    step(f, all(1, Control::work), p);
    FAIL();
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.stage(), 1);
    EXPECT_EQ(e.flight_id(), "X");
  }
}

TEST(Step, MandatoryServiceIsEnforced) {
  const FleetParams p;
  auto f = fleet_of({{0, 0.8, 3000}});
  enqueue_flight(f, "X", 3);
  EXPECT_THROW(step(f, all(1, Control::idle), p), std::invalid_argument);
}

TEST(Step, IllegalControlsAreRejected) {
  const FleetParams p;
  EXPECT_THROW(step(fleet_of({{-2, 0.5, 3000}}), all(1, Control::idle), p), std::invalid_argument);
  EXPECT_THROW(step(fleet_of({{0, 0.8, 3000}}), all(1, Control::charge), p),
               std::invalid_argument);
  EXPECT_THROW(step(fleet_of({{0, 0.8, 3000}}), {}, p), std::invalid_argument);
}

TEST(Step, IsPure) {
  const FleetParams p;
  auto f = fleet_of({{0, 0.7, 3000}, {0, 0.5, 3000}});
  enqueue_flight(f, "X", 4);
  const std::vector<ControlDecision> c{{Control::work, "X"}, {Control::charge, std::nullopt}};
  const auto before = f;
  EXPECT_EQ(step(f, c, p), step(f, c, p));
  EXPECT_EQ(f, before);
}

TEST(EligibleAsevs, SortedBySocThenIndex) {
  const FleetParams p;
  EXPECT_EQ(eligible_asevs(fleet_of({{0, 0.8, 1}, {0, 0.5, 1}, {0, 0.8, 1}}), p),
            (std::vector<int>{0, 2, 1}));
}

TEST(EligibleAsevs, ExcludesWorkingAndDepleted) {
  const FleetParams p;
  EXPECT_TRUE(eligible_asevs(fleet_of({{-2, 0.8, 1}, {-1, 0.8, 1}}), p).empty());
  EXPECT_EQ(eligible_asevs(fleet_of({{0, 0.2, 1}, {1, 0.3, 1}}), p), std::vector<int>{1});
}

TEST(AssignWork, FifoFlightsTakeHighestSoc) {
  const FleetParams p;
  auto f = fleet_of({{0, 0.5, 1}, {0, 0.7, 1}, {0, 0.6, 1}});
  enqueue_flight(f, "A", 3);
  enqueue_flight(f, "B", 3);
  const auto a = assign_work(f, p);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0], (std::pair<int, std::string>{1, "A"}));
  EXPECT_EQ(a[1], (std::pair<int, std::string>{2, "B"}));
}

}  // namespace
}  // namespace asev
