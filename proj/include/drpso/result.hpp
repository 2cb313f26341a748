#pragma once

#include <cstdint>
#include <string>

#include "drpso/data_model.hpp"
#include "drpso/objective.hpp"

namespace drpso {

/// Clamps `schedule` into the problem box.
Schedule clamp_to_box(const DrProblem& problem, Schedule schedule);

TracePoint trace_point(int iteration, const ObjectiveBreakdown& best);

/// Fills the schedule-dependent fields of a result from `best`.
OptimizationResult summarize(const DrProblem& problem, const Schedule& best, std::string algorithm,
                             std::uint64_t seed);

}  // namespace drpso
