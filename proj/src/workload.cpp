#include "workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "text.hpp"

namespace asev {
namespace {

double normal_cdf(double mu, double sigma, double x) {
  return 0.5 * std::erfc(-(x - mu) / (sigma * std::numbers::sqrt2));
}

double normal_pdf(double mu, double sigma, double x) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

bool is_multiple(double value, double dt) {
  const double ratio = value / dt;
  return std::abs(ratio - std::round(ratio)) < 1e-9;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

void validate_spec(const TruncatedNormalSpec& spec, double dt) {
  if (!(dt > 0)) throw InputError("stage length must be positive");
  if (!(spec.sigma >= 0)) throw InputError("workload sigma must be non-negative");
  if (!(spec.lower < spec.upper)) throw InputError("workload lower bound must be below upper bound");
  if (!(spec.lower > 0) || !is_multiple(spec.lower, dt) || !is_multiple(spec.upper, dt)) {
    throw InputError("bounds not stage-aligned");
  }
}

DensityAndCumulative truncated_pdf_cdf(const TruncatedNormalSpec& spec, double x) {
  if (!(spec.sigma > 0) || !(spec.lower < spec.upper)) {
    throw InputError("empty truncation window");
  }
  const double lo = normal_cdf(spec.mu, spec.sigma, spec.lower);
  const double window = normal_cdf(spec.mu, spec.sigma, spec.upper) - lo;
  if (window < 1e-12) throw InputError("empty truncation window");
  if (x <= spec.lower) return {0.0, 0.0};
  if (x >= spec.upper) return {0.0, 1.0};
  return {normal_pdf(spec.mu, spec.sigma, x) / window,
          (normal_cdf(spec.mu, spec.sigma, x) - lo) / window};
}

DiscreteWorkloadDist discretize(const TruncatedNormalSpec& spec, double dt) {
  validate_spec(spec, dt);
  const int first = static_cast<int>(std::lround(spec.lower / dt));
  const int last = static_cast<int>(std::lround(spec.upper / dt)) - 1;

  DiscreteWorkloadDist dist;
  dist.stage_minutes = dt;

  if (spec.sigma == 0.0) {
    const int k = std::clamp(static_cast<int>(std::floor(spec.mu / dt)), first, last);
    dist.support.push_back({k, 1.0});
    return dist;
  }

  double total = 0.0;
  for (int k = first; k <= last; ++k) {
    const double p = normal_cdf(spec.mu, spec.sigma, (k + 1) * dt) -
                     normal_cdf(spec.mu, spec.sigma, k * dt);
    dist.support.push_back({k, std::max(p, 0.0)});
    total += std::max(p, 0.0);
  }
  if (total < 1e-12) throw InputError("empty truncation window");
  for (auto& m : dist.support) m.probability /= total;
  return dist;
}

RandomStream RandomStream::keyed(std::uint64_t master_seed, std::string_view key,
                                 std::uint64_t index) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ fnv1a(key));
  s = splitmix64(s ^ index);
  return RandomStream(s);
}

int sample(const DiscreteWorkloadDist& dist, RandomStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  int fallback = dist.support.back().stages;
  for (const auto& m : dist.support) {
    if (m.probability <= 0.0) continue;
    fallback = m.stages;
    cumulative += m.probability;
    if (u < cumulative) return m.stages;
  }
  return fallback;
}

double mean_stages(const DiscreteWorkloadDist& dist) {
  double mean = 0.0;
  for (const auto& m : dist.support) mean += m.stages * m.probability;
  return mean;
}

int expected_stages(const DiscreteWorkloadDist& dist) {
  // The 1e-9 nudge keeps exact halves (4.5 computed as 4.4999...) rounding up.
  return std::max(1, static_cast<int>(std::floor(mean_stages(dist) + 0.5 + 1e-9)));
}

std::string_view to_string(FlightKind kind) {
  return kind == FlightKind::arrival ? "arrival" : "departure";
}

int parse_hhmm_to_stage(std::string_view text, double stage_minutes) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("malformed time '" + std::string(text) + "', expected HH:MM");
  }
  const auto hh = text::parse_int(text.substr(0, colon));
  const auto mm = text::parse_int(text.substr(colon + 1));
  if (!hh || !mm || *hh < 0 || *mm < 0 || *mm >= 60) {
    throw InputError("malformed time '" + std::string(text) + "', expected HH:MM");
  }
  const int minutes = 60 * *hh + *mm;
  if (!is_multiple(minutes, stage_minutes)) {
    throw InputError("time not stage-aligned: '" + std::string(text) + "'");
  }
  return static_cast<int>(std::lround(minutes / stage_minutes));
}

std::string stage_to_hhmm(int stage, double stage_minutes) {
  const long minutes = std::lround(stage * stage_minutes);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%02ld:%02ld", minutes / 60, minutes % 60);
  return buf;
}

std::vector<FlightEvent> parse_schedule(std::string_view content,
                                        const TruncatedNormalSpec& default_workload,
                                        int horizon, double stage_minutes) {
  std::vector<FlightEvent> events;
  std::set<std::string, std::less<>> seen;
  bool header_seen = false;
  int line_no = 0;

  for (const auto& raw : text::split_lines(content)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = text::split_csv(line);
    const auto fail = [&](const std::string& msg) {
      throw InputError("schedule line " + std::to_string(line_no) + ": " + msg);
    };
    if (!header_seen) {
      if (fields.size() < 3 || fields[0] != "flight_id" || fields[1] != "kind" ||
          fields[2] != "time_hhmm") {
        fail("expected header 'flight_id,kind,time_hhmm[,mu_min,sigma_min,lower_min,upper_min]'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3 && fields.size() != 7) {
      fail("expected 3 or 7 fields, got " + std::to_string(fields.size()));
    }

    FlightEvent ev;
    ev.flight_id = std::string(fields[0]);
    if (ev.flight_id.empty()) fail("empty flight_id");
    if (fields[1] == "arrival") {
      ev.kind = FlightKind::arrival;
    } else if (fields[1] == "departure") {
      ev.kind = FlightKind::departure;
    } else {
      fail("kind must be 'arrival' or 'departure', got '" + std::string(fields[1]) + "'");
    }
    try {
      ev.scheduled_stage = parse_hhmm_to_stage(fields[2], stage_minutes);
    } catch (const InputError& e) {
      fail(e.what());
    }
    if (ev.scheduled_stage < 0 || ev.scheduled_stage >= horizon) fail("stage out of horizon");

    ev.workload = default_workload;
    if (fields.size() == 7) {
      double* targets[] = {&ev.workload.mu, &ev.workload.sigma, &ev.workload.lower,
                           &ev.workload.upper};
      for (std::size_t i = 0; i < 4; ++i) {
        if (fields[3 + i].empty()) continue;
        const auto v = text::parse_double(fields[3 + i]);
        if (!v) fail("non-numeric workload field '" + std::string(fields[3 + i]) + "'");
        *targets[i] = *v;
      }
    }
    try {
      validate_spec(ev.workload, stage_minutes);
    } catch (const InputError& e) {
      fail(e.what());
    }
    if (!seen.insert(ev.flight_id).second) fail("duplicate flight_id '" + ev.flight_id + "'");
    events.push_back(std::move(ev));
  }

  std::stable_sort(events.begin(), events.end(), [](const FlightEvent& a, const FlightEvent& b) {
    return std::tie(a.scheduled_stage, a.flight_id) < std::tie(b.scheduled_stage, b.flight_id);
  });
  return events;
}

std::vector<FlightEvent> load_schedule(const std::filesystem::path& path,
                                       const TruncatedNormalSpec& default_workload,
                                       int horizon, double stage_minutes) {
  return parse_schedule(text::read_file(path), default_workload, horizon, stage_minutes);
}

}  // namespace asev
