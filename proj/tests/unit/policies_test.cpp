#include <gtest/gtest.h>

#include "errors.hpp"
#include "policies.hpp"

namespace asev {
namespace {

CostModel model_for(int n_ev, int horizon, double renewable_kwh = 0.0) {
  CostModel m;
  m.fleet.n_ev = n_ev;
  m.fleet.horizon = horizon;
  m.profiles.grid_price.assign(horizon + 1, 0.15);
  m.profiles.renewable_energy.assign(horizon, renewable_kwh);
  return m;
}

FleetState fleet_at(std::vector<double> socs, int stage = 0) {
  FleetState f;
  f.stage = stage;
  for (double s : socs) f.asevs.push_back({0, s, 3000});
  return f;
}

int chargers(const std::vector<ControlDecision>& c) {
  return static_cast<int>(std::count_if(c.begin(), c.end(),
                                        [](const auto& d) { return d.u == Control::charge; }));
}

TEST(RenewableMatching, NoSunNoCharging) {
  const auto m = model_for(3, 10, 0.0);
  const auto out = heuristic_renewable_matching(fleet_at({0.8, 0.8, 0.8}), m, {}, true);
  ASSERT_TRUE(out.feasible);
  EXPECT_EQ(*out.cost_to_go, 0.0);
  for (const auto& s : *out.trajectory) EXPECT_EQ(chargers(s.controls), 0);
}

TEST(RenewableMatching, UnlimitedSunFillsEveryBattery) {
  const auto m = model_for(3, 40, 1e6);
  const auto out = heuristic_renewable_matching(fleet_at({0.3, 0.5, 0.7}), m, {}, true);
  ASSERT_TRUE(out.feasible);
  EXPECT_EQ(out.trajectory->front().controls.size(), 3u);
  EXPECT_EQ(chargers(out.trajectory->front().controls), 3);
  EXPECT_EQ(terminal_cost([&] {
              FleetState s = fleet_at({0.3, 0.5, 0.7});
              for (const auto& st : *out.trajectory) advance(s, st.controls, m.fleet);
              return s;
            }(),
                          m),
            0.0);
}

TEST(RenewableMatching, LowestSocChargesFirstUntilSupplyIsMet) {
  const auto m = model_for(3, 4, 1.0);
  const auto c = renewable_matching_controls(fleet_at({0.6, 0.3, 0.5}), m);
  EXPECT_EQ(c[1].u, Control::charge);
  EXPECT_EQ(c[0].u, Control::idle);
  EXPECT_EQ(c[2].u, Control::idle);
}

TEST(GreedyCharging, FullFleetWithoutFlightsCostsNothing) {
  const auto m = model_for(4, 20);
  const auto out = heuristic_greedy_charging(fleet_at({0.8, 0.8, 0.8, 0.8}), m, {});
  ASSERT_TRUE(out.feasible);
  EXPECT_EQ(*out.cost_to_go, 0.0);
}

TEST(GreedyCharging, LastStageChargeIsClampedToMaximum) {
  const auto m = model_for(1, 1);
  const auto out = heuristic_greedy_charging(fleet_at({0.767}), m, {}, true);
  ASSERT_TRUE(out.feasible);
  FleetState s = fleet_at({0.767});
  advance(s, out.trajectory->front().controls, m.fleet);
  EXPECT_EQ(s.asevs[0].soc, 0.8);
  EXPECT_EQ(terminal_cost(s, m), 0.0);
}

TEST(GreedyCharging, LongQuietTailLeavesNoTerminalCost) {
  const auto m = model_for(3, 60);
  std::vector<UpcomingFlight> flights{{1, "A", 4}, {2, "B", 5}, {2, "C", 3}};
  FleetState start = fleet_at({0.8, 0.8, 0.8});
  const auto out = heuristic_greedy_charging(start, m, flights, true);
  ASSERT_TRUE(out.feasible);
  FleetState s = start;
  std::size_t next = 0;
  for (const auto& st : *out.trajectory) {
    advance(s, st.controls, m.fleet);
    for (; next < flights.size() && flights[next].stage == s.stage; ++next) {
      enqueue_flight(s, flights[next].flight_id, flights[next].workload);
    }
  }
  EXPECT_EQ(terminal_cost(s, m), 0.0);
}

TEST(BaseSelection, GreedyWhenRenewableIsInfeasible) {
  // No sun: renewable matching never recharges and runs the battery flat.
  // Each job drains 0.2; greedy recovers 0.132 in the four free stages between jobs.
  const auto m = model_for(1, 70);
  std::vector<UpcomingFlight> flights;
  for (int k = 0; k < 6; ++k) flights.push_back({1 + 10 * k, "F" + std::to_string(k), 5});
  const auto chosen = select_base_heuristic(fleet_at({0.8}), m, flights);
  EXPECT_EQ(chosen.chosen, BaseHeuristic::greedy_charging);
  EXPECT_FALSE(heuristic_renewable_matching(fleet_at({0.8}), m, flights).feasible);
}

TEST(BaseSelection, TieGoesToGreedy) {
  const auto m = model_for(2, 10);
  const auto chosen = select_base_heuristic(fleet_at({0.8, 0.8}), m, {});
  EXPECT_EQ(chosen.chosen, BaseHeuristic::greedy_charging);
}

TEST(BaseSelection, CheaperRenewableWins) {
  // Short day: the shortfall is priced per stored kWh, grid charging per drawn kWh,
  // so buying only what the sun covers beats charging everything from the grid.
  const auto m = model_for(2, 6, 1.0);
  const auto chosen = select_base_heuristic(fleet_at({0.5, 0.5}), m, {});
  const auto r = heuristic_renewable_matching(fleet_at({0.5, 0.5}), m, {});
  const auto g = heuristic_greedy_charging(fleet_at({0.5, 0.5}), m, {});
  ASSERT_TRUE(r.feasible && g.feasible);
  EXPECT_LT(*r.cost_to_go, *g.cost_to_go);
  EXPECT_EQ(chosen.chosen, BaseHeuristic::renewable_matching);
}

TEST(BaseSelection, NeitherFeasibleThrows) {
  const auto m = model_for(1, 10);
  FleetState s = fleet_at({0.8});
  s.asevs[0].mode = -5;
  enqueue_flight(s, "X", 3);
  s.pending[0].delay = 1;
  EXPECT_THROW(select_base_heuristic(s, m, {}), InfeasibleError);
}

TEST(RolloutCandidates, AtMostFleetPlusOne) {
  const FleetParams p;
  auto f = fleet_at({0.3, 0.8, 0.5, 0.6, 0.2});
  enqueue_flight(f, "A", 3);
  const auto c = rollout_candidates(f, p);
  EXPECT_LE(c.size(), f.asevs.size() + 1);
  // Assigned ASEV 1 (highest SoC) works in every candidate; k chargers in candidate k.
  for (std::size_t k = 0; k < c.size(); ++k) {
    EXPECT_EQ(c[k][1].u, Control::work);
    EXPECT_EQ(chargers(c[k]), static_cast<int>(k));
  }
  // First charger is the lowest SoC.
  EXPECT_EQ(c[1][4].u, Control::charge);
}

TEST(RolloutCandidates, FullIdleFleetHasOneCandidate) {
  const FleetParams p;
  const auto c = rollout_candidates(fleet_at({0.8, 0.8}), p);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(chargers(c[0]), 0);
}

TEST(AllJointControls, CountsMatchEnumeration) {
  const FleetParams p;
  // Two free, non-full ASEVs and one flight: 2 matchings x 2 choices for the other.
  auto f = fleet_at({0.5, 0.6});
  enqueue_flight(f, "A", 3);
  EXPECT_EQ(all_joint_controls(f, p).size(), 4u);
  EXPECT_EQ(all_joint_controls(fleet_at({0.5, 0.6, 0.7}), p).size(), 8u);
}

TEST(RolloutDecide, AllFullNoFlightsIdles) {
  const auto m = model_for(3, 12);
  const auto d = rollout_decide(fleet_at({0.8, 0.8, 0.8}), m, {}, {});
  EXPECT_EQ(chargers(d.controls), 0);
  EXPECT_EQ(d.score, 0.0);
}

TEST(RolloutDecide, TieWithSurplusPrefersMoreChargers) {
  // Free renewable energy makes charging now and later cost the same.
  auto m = model_for(2, 40, 1e6);
  m.profiles.renewable_price = 0.0;
  const auto d = rollout_decide(fleet_at({0.5, 0.5}), m, {}, {});
  EXPECT_EQ(chargers(d.controls), 2);
}

TEST(RolloutDecide, FlatPriceWithoutSunDefersToTheShortfall) {
  // The shortfall is billed per stored kWh, charging per drawn kWh.
  auto m = model_for(2, 30);
  const auto d = rollout_decide(fleet_at({0.5, 0.5}), m, {}, {});
  EXPECT_EQ(chargers(d.controls), 0);
}

TEST(RolloutDecide, ParallelMatchesSerial) {
  auto m = model_for(6, 48, 2.0);
  for (int t = 0; t < 16; ++t) m.profiles.grid_price[t] = 0.07;
  std::vector<ForecastFlight> future;
  const auto dist = discretize(TruncatedNormalSpec{}, 5.0);
  for (int k = 0; k < 8; ++k) {
    future.push_back({2 + 5 * k, "F" + std::to_string(k), dist, expected_stages(dist)});
  }
  const auto start = fleet_at({0.4, 0.5, 0.6, 0.7, 0.8, 0.3});
  for (auto mode : {RolloutConfig::WorkloadMode::certainty_equivalent,
                    RolloutConfig::WorkloadMode::monte_carlo}) {
    RolloutConfig serial{mode, 4, false, 11, false};
    RolloutConfig parallel = serial;
    parallel.parallel_eval = true;
    const auto a = rollout_decide(start, m, future, serial);
    const auto b = rollout_decide(start, m, future, parallel);
    EXPECT_EQ(a.controls, b.controls);
    EXPECT_EQ(a.score, b.score);
  }
}

TEST(RolloutDecide, FullEnumerationIsCapped) {
  const auto m = model_for(5, 4);
  RolloutConfig c;
  c.full_enumeration = true;
  EXPECT_THROW(rollout_decide(fleet_at({0.5, 0.5, 0.5, 0.5, 0.5}), m, {}, c), InputError);
}

TEST(RolloutDecide, NotWorseThanBaseFromTheSameState) {
  auto m = model_for(2, 12, 0.0);
  for (int t = 0; t < 4; ++t) m.profiles.grid_price[t] = 0.07;
  const auto start = fleet_at({0.6, 0.7});
  const auto base = base_cost_to_go(start, m, {});
  const auto d = rollout_decide(start, m, {}, {});
  ASSERT_TRUE(base.has_value());
  EXPECT_LE(d.score, *base + 1e-9);
}

TEST(PolicyNames, RoundTrip) {
  for (auto p : {PolicyKind::greedy, PolicyKind::renewable, PolicyKind::rollout}) {
    EXPECT_EQ(parse_policy(to_string(p)), p);
  }
  EXPECT_FALSE(parse_policy("optimal").has_value());
}

}  // namespace
}  // namespace asev
