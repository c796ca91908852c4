#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "errors.hpp"
#include "scenario_io.hpp"

namespace asev {
namespace {

namespace fs = std::filesystem;

class ScenarioFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("asev_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("schedule.csv", "flight_id,kind,time_hhmm\nA1,arrival,06:00\nD1,departure,22:55\n");
    write("tariff.csv", "start_hhmm,end_hhmm,price\n00:00,07:00,0.07\n07:00,24:00,0.15\n");
    std::string pv = "stage,value\n";
    for (int k = 0; k < 288; ++k) pv += std::to_string(k) + "," + (k >= 100 && k < 200 ? "12" : "0") + "\n";
    write("pv.csv", pv);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& content) {
    std::ofstream(dir_ / name) << content;
    return dir_ / name;
  }

  fs::path scenario(const std::string& extra = "", const std::string& pv_file = "pv.csv") {
    return write("scenario.json", R"({
      "fleet": {"n_ev": 4},
      "prices": {"renewable_price": 0.04, "tiers_file": "tariff.csv"},
      "renewable": {"file": ")" + pv_file + R"("},
      "schedule": "schedule.csv")" + extra + "\n}");
  }

  std::string messages(const fs::path& p) {
    std::string all;
    for (const auto& d : validate_scenario_file(p)) all += d.render() + "\n";
    return all;
  }

  fs::path dir_;
};

TEST_F(ScenarioFiles, WellFormedScenarioLoads) {
  const auto loaded = load_scenario(scenario());
  const auto& s = loaded.scenario;
  EXPECT_EQ(s.fleet.n_ev, 4);
  ASSERT_EQ(s.schedule.size(), 2u);
  EXPECT_EQ(s.schedule[0].scheduled_stage, 72);
  EXPECT_EQ(s.schedule[1].scheduled_stage, 275);
  ASSERT_EQ(s.profiles.grid_price.size(), 289u);
  EXPECT_EQ(s.profiles.grid_price[83], 0.07);
  EXPECT_EQ(s.profiles.grid_price[84], 0.15);
  EXPECT_EQ(s.profiles.terminal_price(), 0.07);
  // 12 kW over 5 minutes.
  EXPECT_NEAR(s.profiles.renewable_energy[150], 1.0, 1e-12);
  EXPECT_TRUE(validate_scenario_file(scenario()).empty());
}

TEST_F(ScenarioFiles, ShortRenewableProfileIsReported) {
  std::string pv = "stage,value\n";
  for (int k = 0; k < 287; ++k) pv += std::to_string(k) + ",0\n";
  write("short.csv", pv);
  EXPECT_NE(messages(scenario("", "short.csv")).find("profile length 287 ≠ horizon 288"),
            std::string::npos);
}

TEST_F(ScenarioFiles, OffGridFlightIsReported) {
  write("schedule.csv", "flight_id,kind,time_hhmm\nA1,arrival,23:57\n");
  EXPECT_NE(messages(scenario()).find("time not stage-aligned"), std::string::npos);
}

TEST_F(ScenarioFiles, EveryProblemIsListed) {
  const auto p = write("scenario.json", R"({
    "fleet": {"n_ev": 0, "colour": "red"},
    "prices": {"tiers_file": "tariff.csv"},
    "schedule": "missing.csv",
    "rollout": {"workload_mode": "psychic"}
  })");
  const auto diags = validate_scenario_file(p);
  EXPECT_GE(diags.size(), 4u);
  const auto all = messages(p);
  EXPECT_NE(all.find("fleet.colour: unknown key"), std::string::npos);
  EXPECT_NE(all.find("n_ev"), std::string::npos);
  EXPECT_NE(all.find("missing.csv"), std::string::npos);
  EXPECT_NE(all.find("rollout.workload_mode"), std::string::npos);
  EXPECT_THROW(load_scenario(p), InputError);
}

TEST_F(ScenarioFiles, CancellationEventIsParsed) {
  const auto loaded = load_scenario(scenario(
      R"(, "events": [{"kind": "cancellation", "flight_id": "D1", "announce_hhmm": "21:55"}])"));
  ASSERT_EQ(loaded.scenario.events.size(), 1u);
  EXPECT_EQ(loaded.scenario.events[0].announce_stage, 263);
}

TEST_F(ScenarioFiles, SetParameterRescalesPv) {
  auto loaded = load_scenario(scenario());
  set_parameter(loaded, "pv_scale", 2.0);
  EXPECT_NEAR(loaded.scenario.profiles.renewable_energy[150], 2.0, 1e-12);
  set_parameter(loaded, "n_ev", 6);
  EXPECT_EQ(loaded.scenario.fleet.n_ev, 6);
  try {
    set_parameter(loaded, "colour", 1.0);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("sweepable keys: n_ev"), std::string::npos);
  }
}

TEST(Tariff, TwoTierExpansionWrapsToMidnight) {
  const auto tiers =
      parse_tiers("start_hhmm,end_hhmm,price\n00:00,07:00,0.07\n07:00,24:00,0.15\n", 5.0);
  const auto prices = expand_tiers(tiers, 288);
  ASSERT_EQ(prices.size(), 289u);
  EXPECT_EQ(prices[0], 0.07);
  EXPECT_EQ(prices[83], 0.07);
  EXPECT_EQ(prices[84], 0.15);
  EXPECT_EQ(prices[287], 0.15);
  EXPECT_EQ(prices[288], 0.07);
  EXPECT_EQ(expand_tiers(tiers, 288, 0.15)[288], 0.15);
}

TEST(Tariff, GapsAndOverlapsAreRejected) {
  EXPECT_THROW(expand_tiers({{0, 84, 0.07}, {90, 288, 0.15}}, 288), InputError);
  EXPECT_THROW(expand_tiers({{0, 100, 0.07}, {84, 288, 0.15}}, 288), InputError);
}

TEST(StageValues, RoundTrip) {
  const std::vector<double> v{0.0, 1.25, 3.5};
  EXPECT_EQ(parse_stage_values(format_stage_values(v, 4), "x"), v);
  EXPECT_THROW(parse_stage_values("stage,value\n0,1\n2,3\n", "x"), InputError);
}

TEST(BundledScenarios, AllLoad) {
  for (const char* name : {"bristol_summer", "bristol_winter", "bristol_cancel"}) {
    const auto path = fs::path(ASEV_SCENARIO_DIR) / name / "scenario.json";
    const auto loaded = load_scenario(path);
    EXPECT_EQ(loaded.scenario.fleet.n_ev, 25);
    EXPECT_EQ(loaded.scenario.fleet.horizon, 288);
    ASSERT_EQ(loaded.scenario.schedule.size(), 174u);
    EXPECT_EQ(loaded.scenario.schedule.front().scheduled_stage, 72);
    EXPECT_EQ(loaded.scenario.schedule.back().scheduled_stage, 275);
  }
}

}  // namespace
}  // namespace asev
