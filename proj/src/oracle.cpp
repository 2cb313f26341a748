#include "drpso/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "drpso/error.hpp"
#include "drpso/objective.hpp"

namespace drpso {

void ReducedProblem::validate() const {
  if (free_hours.empty() || free_hours.size() > kMaxFreeHours) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("need 1..{} free hours, got {}", kMaxFreeHours, free_hours.size()));
  }
  for (std::size_t i = 0; i < free_hours.size(); ++i) {
    if (free_hours[i] >= kHoursPerDay) {
      throw Error(ErrorCode::InvalidConfig, fmt::format("free hour index {} out of range", free_hours[i]));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (free_hours[i] == free_hours[j]) {
        throw Error(ErrorCode::InvalidConfig, fmt::format("free hour {} listed twice", free_hours[i]));
      }
    }
  }
  if (grid_resolution < 2) throw Error(ErrorCode::InvalidConfig, "grid_resolution must be >= 2");
  if (grid_points() > kMaxGridPoints) {
    throw Error(ErrorCode::GridTooLarge,
                fmt::format("{}^{} grid points exceed {}", grid_resolution, free_hours.size(), kMaxGridPoints));
  }
}

std::size_t ReducedProblem::grid_points() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < free_hours.size(); ++i) {
    if (n > kMaxGridPoints / std::max<std::size_t>(grid_resolution, 1)) return kMaxGridPoints + 1;
    n *= grid_resolution;
  }
  return n;
}

DrProblem ReducedProblem::pinned_problem() const {
  DrProblem p = base;
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    if (std::find(free_hours.begin(), free_hours.end(), h) == free_hours.end()) {
      p.lower[h] = p.upper[h] = p.predicted[h];
    }
  }
  return p;
}

GridSearchResult grid_search(const ReducedProblem& reduced) {
  reduced.validate();
  const DrProblem problem = reduced.pinned_problem();

  // Visit free hours in ascending hour order so that enumeration order is
  // lexicographic in the schedule; a strict '<' then keeps the smallest tie.
  std::vector<std::size_t> hours = reduced.free_hours;
  std::sort(hours.begin(), hours.end());
  const std::size_t res = reduced.grid_resolution;
  auto grid_value = [&](std::size_t hour, std::size_t k) {
    if (k == res - 1) return problem.upper[hour];
    const double step = (problem.upper[hour] - problem.lower[hour]) / static_cast<double>(res - 1);
    return problem.lower[hour] + step * static_cast<double>(k);
  };

  Schedule x = problem.predicted.values();
  std::vector<std::size_t> digit(hours.size(), 0);
  for (std::size_t d = 0; d < hours.size(); ++d) x[hours[d]] = grid_value(hours[d], 0);

  GridSearchResult out;
  out.best_objective = std::numeric_limits<double>::infinity();
  for (;;) {
    const double obj = evaluate(problem, x).objective;
    ++out.evaluated;
    if (obj < out.best_objective) {
      out.best_objective = obj;
      out.best_schedule = x;
    }
    // Odometer increment, last hour fastest.
    std::size_t d = hours.size();
    while (d > 0) {
      --d;
      if (++digit[d] < res) {
        x[hours[d]] = grid_value(hours[d], digit[d]);
        break;
      }
      digit[d] = 0;
      x[hours[d]] = grid_value(hours[d], 0);
      if (d == 0) return out;
    }
  }
}

double relative_gap(double candidate, double optimum) {
  if (optimum == 0.0) return candidate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return (candidate - optimum) / std::abs(optimum);
}

}  // namespace drpso
