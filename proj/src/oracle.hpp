#pragma once

#include "sim.hpp"

namespace asev {

inline constexpr int kOracleMaxFleet = 3;
inline constexpr int kOracleMaxHorizon = 20;

/// Exact minimum of the day objective by memoized backward induction over
/// every admissible joint control. Deterministic workloads only (sigma = 0),
/// at most 3 ASEVs and 20 stages; throws InputError "instance too large"
/// beyond that and InfeasibleError if no control sequence is feasible.
double exact_dp_oracle(const Scenario& scenario);

}  // namespace asev
