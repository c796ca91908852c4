#pragma once

#include <optional>
#include <string>
#include <vector>

namespace asev {

/// Tolerance for SoC comparisons against the operating bounds.
inline constexpr double kSocTolerance = 1e-9;

struct FleetParams {
  int n_ev = 25;
  double capacity_kwh = 50.0;
  double soc_min = 0.2;
  double soc_max = 0.8;
  double charge_power_kw = 22.0;
  double efficiency = 0.9;
  double e_work_kwh_per_stage = 2.0;
  int d_thre = 1;
  int horizon = 288;
  double stage_minutes = 5.0;
  double cycles_to_failure = 3000.0;

  /// Energy drawn by one charger over one stage at constant power.
  double charge_energy_kwh() const { return charge_power_kw * stage_minutes / 60.0; }

  /// Throws InputError naming the offending field.
  void validate() const;
};

/// mode: 1 charging, 0 idle, -k working with k stages left.
struct AsevState {
  int mode = 0;
  double soc = 0.8;
  double cycles_to_failure = 3000.0;

  bool working() const { return mode < 0; }
  friend bool operator==(const AsevState&, const AsevState&) = default;
};

struct PendingFlight {
  std::string flight_id;
  int remaining_workload = 1;  // realized w_jt, in stages
  int delay = 0;
  int queued_stage = 0;
  friend bool operator==(const PendingFlight&, const PendingFlight&) = default;
};

/// Fleet snapshot at the start of `stage`. `pending` is FIFO.
struct FleetState {
  int stage = 0;
  std::vector<AsevState> asevs;
  std::vector<PendingFlight> pending;
  friend bool operator==(const FleetState&, const FleetState&) = default;
};

enum class Control : int { work = -1, idle = 0, charge = 1 };

struct ControlDecision {
  Control u = Control::idle;
  std::optional<std::string> assignment;  // set only for a fresh work assignment
  friend bool operator==(const ControlDecision&, const ControlDecision&) = default;
};

FleetState initial_fleet(const FleetParams& params, double initial_soc);

bool soc_at_min(double soc, const FleetParams& params);
bool soc_at_max(double soc, const FleetParams& params);

/// Ascending list of admissible controls for ASEV i.
std::vector<Control> feasible_controls(const FleetState& fleet, const FleetParams& params,
                                       std::size_t i);

/// Idle or charging ASEVs above soc_min, by decreasing SoC then index.
std::vector<int> eligible_asevs(const FleetState& fleet, const FleetParams& params);

/// Puts a newly waiting flight at the back of the queue.
void enqueue_flight(FleetState& fleet, std::string flight_id, int workload);

/// Energy stored into a battery by one stage of charging (after the SoC clamp).
double charge_delivered_kwh(double soc, const FleetParams& params);

/// Energy drawn from the supply to deliver `charge_delivered_kwh`.
double charge_drawn_kwh(double soc, const FleetParams& params);

struct StepFailure {
  enum class Kind { delay_threshold, battery_depleted };
  Kind kind;
  int stage;
  std::string flight_id;  // delayed flight, or the job being served when depleted
  std::string message;
};

/// In-place transition. Returns the failure instead of throwing; `fleet` is
/// left in an unspecified state on failure. Controls violating a precondition
/// throw std::invalid_argument.
std::optional<StepFailure> advance(FleetState& fleet, const std::vector<ControlDecision>& controls,
                                   const FleetParams& params);

/// Pure transition; throws InfeasibleError on a constraint violation.
FleetState step(const FleetState& fleet, const std::vector<ControlDecision>& controls,
                const FleetParams& params);

/// Fixed work assignment shared by every policy: FIFO flights take the
/// eligible ASEVs in order of decreasing SoC. Returns (asev index, flight id).
std::vector<std::pair<int, std::string>> assign_work(const FleetState& fleet,
                                                     const FleetParams& params);

}  // namespace asev
