#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "costs.hpp"
#include "dynamics.hpp"
#include "workload.hpp"

namespace asev {

/// A flight that will join the queue at `stage` with a known (assumed) workload.
struct UpcomingFlight {
  int stage = 0;
  std::string flight_id;
  int workload = 1;
};

/// A scheduled flight as seen by the controller: workload still random.
struct ForecastFlight {
  int stage = 0;
  std::string flight_id;
  DiscreteWorkloadDist dist;
  int expected_workload = 1;
};

struct TrajectoryStep {
  std::vector<ControlDecision> controls;
  StageCost cost;
};

struct PolicyOutcome {
  bool feasible = false;
  std::optional<double> cost_to_go;
  std::vector<ControlDecision> first_stage_controls;
  std::optional<std::vector<TrajectoryStep>> trajectory;
  std::optional<StepFailure> failure;
};

enum class BaseHeuristic { renewable_matching, greedy_charging };
enum class PolicyKind { greedy, renewable, rollout };

std::string_view to_string(BaseHeuristic h);
std::string_view to_string(PolicyKind p);
std::optional<PolicyKind> parse_policy(std::string_view name);

/// One stage of the renewable-matching rule: assign work by highest SoC,
/// then charge lowest-SoC-first while the fleet draw stays below E_Rt.
std::vector<ControlDecision> renewable_matching_controls(const FleetState& fleet,
                                                         const CostModel& model);

/// One stage of the greedy rule: assign work, charge every non-full free ASEV.
std::vector<ControlDecision> greedy_charging_controls(const FleetState& fleet,
                                                      const CostModel& model);

/// Simulates the heuristic from `start` to the end of the day. `future` holds
/// flights joining strictly after start.stage, sorted by stage.
PolicyOutcome heuristic_renewable_matching(const FleetState& start, const CostModel& model,
                                           std::span<const UpcomingFlight> future,
                                           bool record_trajectory = false);
PolicyOutcome heuristic_greedy_charging(const FleetState& start, const CostModel& model,
                                        std::span<const UpcomingFlight> future,
                                        bool record_trajectory = false);

struct BaseSelection {
  BaseHeuristic chosen;
  PolicyOutcome outcome;
};

/// Cheaper feasible heuristic (ties go to greedy). Throws InfeasibleError
/// "no feasible base heuristic" when neither completes.
BaseSelection select_base_heuristic(const FleetState& start, const CostModel& model,
                                    std::span<const UpcomingFlight> future);

/// Cost-to-go of the better heuristic, or nullopt when both are infeasible.
std::optional<double> base_cost_to_go(const FleetState& start, const CostModel& model,
                                      std::span<const UpcomingFlight> future);

struct RolloutConfig {
  enum class WorkloadMode { certainty_equivalent, monte_carlo };
  WorkloadMode workload_mode = WorkloadMode::certainty_equivalent;
  int samples = 1;
  bool parallel_eval = false;
  std::uint64_t seed = 0;
  /// Enumerate every feasible joint control instead of the k-lowest-SoC
  /// charging family. Only allowed for fleets of at most 4 ASEVs.
  bool full_enumeration = false;

  void validate() const;
};

inline constexpr int kFullEnumerationMaxFleet = 4;

/// Candidate joint controls for the rollout lookahead: fixed highest-SoC
/// work assignment, then the k lowest-SoC free ASEVs charge, k = 0..n.
std::vector<std::vector<ControlDecision>> rollout_candidates(const FleetState& fleet,
                                                             const FleetParams& params);

/// Every admissible joint control at `fleet` (mandatory service respected).
std::vector<std::vector<ControlDecision>> all_joint_controls(const FleetState& fleet,
                                                             const FleetParams& params);

struct RolloutDecision {
  std::vector<ControlDecision> controls;
  double score = 0.0;  // g_t + approximate cost-to-go
  std::size_t candidates_evaluated = 0;
};

/// One-step lookahead. `future` lists flights joining after current.stage.
/// Throws InfeasibleError "all candidates infeasible".
RolloutDecision rollout_decide(const FleetState& current, const CostModel& model,
                               std::span<const ForecastFlight> future,
                               const RolloutConfig& config);

/// Certainty-equivalent view of a forecast.
std::vector<UpcomingFlight> expected_flights(std::span<const ForecastFlight> future);

/// Control helpers shared by the rules and candidates.
std::vector<ControlDecision> forced_and_assigned_controls(const FleetState& fleet,
                                                          const FleetParams& params);

}  // namespace asev
