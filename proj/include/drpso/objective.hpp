#pragma once

// Demand-response objective: normalized energy cost, normalized load shift
// and a penalty on total consumption above the forecast total.

#include <filesystem>
#include <optional>
#include <span>

#include "drpso/data_model.hpp"

namespace drpso {

using ScheduleView = std::span<const double, kHoursPerDay>;

struct ObjectiveBreakdown {
  double cost = 0.0;        // cents
  double load_shift = 0.0;  // kWh
  double violation = 0.0;
  double objective = 0.0;

  friend bool operator==(const ObjectiveBreakdown&, const ObjectiveBreakdown&) = default;
};

/// sum_h load[h] * price[h]
double energy_cost(ScheduleView schedule, const HourlyProfile& prices);
/// sum_h |load[h] - predicted[h]|
double load_shift(ScheduleView schedule, const HourlyProfile& predicted);
/// max(total(schedule) / total(predicted) - 1, 0); the symmetric mode uses
/// the absolute relative deviation instead. Throws ZeroPredictedTotal.
double violation(ScheduleView schedule, const HourlyProfile& predicted,
                 ViolationMode mode = ViolationMode::OneSided);

inline double energy_cost(const HourlyProfile& s, const HourlyProfile& p) { return energy_cost(s.values(), p); }
inline double load_shift(const HourlyProfile& s, const HourlyProfile& p) { return load_shift(s.values(), p); }
inline double violation(const HourlyProfile& s, const HourlyProfile& p,
                        ViolationMode mode = ViolationMode::OneSided) {
  return violation(s.values(), p, mode);
}

/// Schedules outside the bounds are still evaluated.
ObjectiveBreakdown evaluate(const DrProblem& problem, ScheduleView schedule);
inline ObjectiveBreakdown evaluate(const DrProblem& problem, const HourlyProfile& schedule) {
  return evaluate(problem, schedule.values());
}

struct ProblemOptions {
  double gamma_lo = 0.5;
  double gamma_hi = 1.5;
  std::optional<double> peak_cap;  // kWh, applied to every hour's upper bound
  double alpha = 100.0;
  ViolationMode violation_mode = ViolationMode::OneSided;
};

/// Box [gamma_lo * predicted, min(gamma_hi * predicted, peak_cap)] with
/// e_cmax = sum upper * price and
/// l_shmax = sum max(upper - predicted, predicted - lower).
/// Throws InvalidBounds when gamma_lo > gamma_hi or a bound is negative.
DrProblem build_problem(const HourlyProfile& predicted, const HourlyProfile& prices, double w1, double w2,
                        const ProblemOptions& options = {});

/// Reads a JSON object with any of: w1, w2, alpha, gamma_lo, gamma_hi,
/// peak_cap, symmetric_violation. Missing keys keep the values passed in.
struct ProblemSettings {
  double w1 = 0.4;
  double w2 = 0.6;
  ProblemOptions options;
};
ProblemSettings read_problem_settings(const std::filesystem::path& path, ProblemSettings defaults = {});

}  // namespace drpso
