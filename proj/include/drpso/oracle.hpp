#pragma once

// Exhaustive grid search over a few free hours, the reference optimum for
// checking the stochastic optimizers on small instances.

#include <cstddef>
#include <vector>

#include "drpso/data_model.hpp"

namespace drpso {

inline constexpr std::size_t kMaxFreeHours = 4;
inline constexpr std::size_t kMaxGridPoints = 10'000'000;

/// Hours not listed in `free_hours` are pinned to the predicted load.
struct ReducedProblem {
  DrProblem base;
  std::vector<std::size_t> free_hours;  // 0-based, distinct
  std::size_t grid_resolution = 101;    // points per free hour, bounds included

  /// Throws InvalidConfig or GridTooLarge.
  void validate() const;
  /// `base` with every pinned hour's bounds collapsed onto the forecast.
  DrProblem pinned_problem() const;
  std::size_t grid_points() const;
};

struct GridSearchResult {
  Schedule best_schedule{};
  double best_objective = 0.0;
  std::size_t evaluated = 0;
};

/// Argmin over the full grid; ties go to the lexicographically smallest
/// schedule. RNG-free.
GridSearchResult grid_search(const ReducedProblem& reduced);

/// (candidate - optimum) / |optimum|; zero when both are zero.
double relative_gap(double candidate, double optimum);

}  // namespace drpso
