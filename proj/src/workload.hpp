#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asev {

/// Parent normal N(mu, sigma^2) truncated to the open interval (lower, upper).
/// All values in minutes. sigma == 0 denotes a deterministic workload.
struct TruncatedNormalSpec {
  double mu = 22.5;
  double sigma = 5.0;
  double lower = 15.0;
  double upper = 30.0;

  friend bool operator==(const TruncatedNormalSpec&, const TruncatedNormalSpec&) = default;
};

struct StageMass {
  int stages;
  double probability;
};

/// Distribution of the number of stages needed to serve one flight.
struct DiscreteWorkloadDist {
  double stage_minutes = 5.0;
  std::vector<StageMass> support;  // strictly increasing in `stages`
};

struct DensityAndCumulative {
  double density;
  double cumulative;
};

DensityAndCumulative truncated_pdf_cdf(const TruncatedNormalSpec& spec, double x);

/// Stage k covers minutes [k*dt, (k+1)*dt); support is lower/dt .. upper/dt - 1.
DiscreteWorkloadDist discretize(const TruncatedNormalSpec& spec, double dt);

/// Seeded stream producing platform-independent uniforms in [0, 1).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Substream derived from a master seed and a string key (e.g. a flight id).
  static RandomStream keyed(std::uint64_t master_seed, std::string_view key,
                            std::uint64_t index = 0);

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

int sample(const DiscreteWorkloadDist& dist, RandomStream& rng);

/// Certainty-equivalent stage count: mean rounded half-up, at least 1.
int expected_stages(const DiscreteWorkloadDist& dist);

double mean_stages(const DiscreteWorkloadDist& dist);

enum class FlightKind { arrival, departure };

struct FlightEvent {
  std::string flight_id;
  FlightKind kind = FlightKind::arrival;
  int scheduled_stage = 0;
  TruncatedNormalSpec workload;
};

std::string_view to_string(FlightKind kind);

/// "HH:MM" -> stage index; throws InputError when the time is off the stage grid.
int parse_hhmm_to_stage(std::string_view text, double stage_minutes);
std::string stage_to_hhmm(int stage, double stage_minutes);

/// Reads `flight_id,kind,time_hhmm[,mu_min,sigma_min,lower_min,upper_min]`.
/// Result is sorted by (scheduled_stage, flight_id).
std::vector<FlightEvent> load_schedule(const std::filesystem::path& path,
                                       const TruncatedNormalSpec& default_workload,
                                       int horizon, double stage_minutes);

std::vector<FlightEvent> parse_schedule(std::string_view text,
                                        const TruncatedNormalSpec& default_workload,
                                        int horizon, double stage_minutes);

void validate_spec(const TruncatedNormalSpec& spec, double dt);

}  // namespace asev
