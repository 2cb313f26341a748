#include "drpso/result.hpp"

#include <algorithm>

namespace drpso {

Schedule clamp_to_box(const DrProblem& problem, Schedule schedule) {
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    schedule[h] = std::clamp(schedule[h], problem.lower[h], problem.upper[h]);
  }
  return schedule;
}

TracePoint trace_point(int iteration, const ObjectiveBreakdown& best) {
  return TracePoint{iteration, best.objective, best.cost, best.load_shift, best.violation};
}

OptimizationResult summarize(const DrProblem& problem, const Schedule& best, std::string algorithm,
                             std::uint64_t seed) {
  const ObjectiveBreakdown b = evaluate(problem, best);
  OptimizationResult r;
  r.algorithm = std::move(algorithm);
  r.best_schedule = HourlyProfile(ProfileKind::Load, best);
  r.objective = b.objective;
  r.cost = b.cost;
  r.load_shift = b.load_shift;
  r.violation = b.violation;
  r.baseline_cost = energy_cost(problem.predicted, problem.prices);
  r.peak_before = peak(problem.predicted);
  r.peak_after = peak(r.best_schedule);
  r.rng_seed = seed;
  return r;
}

}  // namespace drpso
