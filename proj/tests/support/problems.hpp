#pragma once

// Random demand-response instances shared by the optimizer tests.

#include <cstdint>

#include "drpso/data_model.hpp"
#include "drpso/objective.hpp"
#include "drpso/rng.hpp"

namespace drpso::testing {

inline HourlyProfile random_profile(Rng& rng, ProfileKind kind, double lo, double hi) {
  Schedule s{};
  for (double& v : s) v = rng.uniform(lo, hi);
  return HourlyProfile(kind, s);
}

/// Loads in [20, 120] kWh, prices in [1, 8] cents, random weights summing to 1.
inline DrProblem random_problem(std::uint64_t seed, ProblemOptions options = {}) {
  Rng rng(seed);
  const HourlyProfile load = random_profile(rng, ProfileKind::Load, 20.0, 120.0);
  const HourlyProfile price = random_profile(rng, ProfileKind::Price, 1.0, 8.0);
  const double w1 = rng.uniform01();
  return build_problem(load, price, w1, 1.0 - w1, options);
}

}  // namespace drpso::testing
