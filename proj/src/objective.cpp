#include "drpso/objective.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "drpso/error.hpp"

namespace drpso {

double energy_cost(ScheduleView schedule, const HourlyProfile& prices) {
  double cost = 0.0;
  for (std::size_t h = 0; h < kHoursPerDay; ++h) cost += schedule[h] * prices[h];
  return cost;
}

double load_shift(ScheduleView schedule, const HourlyProfile& predicted) {
  double shift = 0.0;
  for (std::size_t h = 0; h < kHoursPerDay; ++h) shift += std::abs(schedule[h] - predicted[h]);
  return shift;
}

double violation(ScheduleView schedule, const HourlyProfile& predicted, ViolationMode mode) {
  const double expected = total(predicted);
  if (!(expected > 0.0)) throw Error(ErrorCode::ZeroPredictedTotal, "predicted daily total is zero");
  const double ratio = std::accumulate(schedule.begin(), schedule.end(), 0.0) / expected;
  if (mode == ViolationMode::Symmetric) return std::abs(ratio - 1.0);
  return std::max(ratio - 1.0, 0.0);
}

ObjectiveBreakdown evaluate(const DrProblem& p, ScheduleView schedule) {
  ObjectiveBreakdown b;
  b.cost = energy_cost(schedule, p.prices);
  b.load_shift = load_shift(schedule, p.predicted);
  b.violation = violation(schedule, p.predicted, p.violation_mode);
  b.objective = p.w1 * b.cost / p.e_cmax + p.w2 * b.load_shift / p.l_shmax + p.alpha * b.violation;
  return b;
}

DrProblem build_problem(const HourlyProfile& predicted, const HourlyProfile& prices, double w1, double w2,
                        const ProblemOptions& options) {
  if (!(options.gamma_lo >= 0.0) || !(options.gamma_lo <= options.gamma_hi)) {
    throw Error(ErrorCode::InvalidBounds,
                fmt::format("need 0 <= gamma_lo ({}) <= gamma_hi ({})", options.gamma_lo, options.gamma_hi));
  }
  if (options.peak_cap && !(*options.peak_cap >= 0.0)) {
    throw Error(ErrorCode::InvalidBounds, fmt::format("peak cap {} must be >= 0", *options.peak_cap));
  }
  if (predicted.kind() != ProfileKind::Load || prices.kind() != ProfileKind::Price) {
    throw Error(ErrorCode::InvalidConfig, "build_problem expects (load forecast, prices)");
  }

  DrProblem p;
  p.predicted = predicted;
  p.prices = prices;
  p.w1 = w1;
  p.w2 = w2;
  p.alpha = options.alpha;
  p.violation_mode = options.violation_mode;
  double e_cmax = 0.0;
  double l_shmax = 0.0;
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    double hi = options.gamma_hi * predicted[h];
    if (options.peak_cap) hi = std::min(hi, *options.peak_cap);
    // A cap below the usual floor pulls the floor down with it.
    const double lo = std::min(options.gamma_lo * predicted[h], hi);
    p.lower[h] = lo;
    p.upper[h] = hi;
    e_cmax += hi * prices[h];
    l_shmax += std::max(hi - predicted[h], predicted[h] - lo);
  }
  // A zero index means that term is identically zero inside the box.
  p.e_cmax = e_cmax > 0.0 ? e_cmax : 1.0;
  p.l_shmax = l_shmax > 0.0 ? l_shmax : 1.0;
  p.validate();
  return p;
}

ProblemSettings read_problem_settings(const std::filesystem::path& path, ProblemSettings s) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open '{}'", path.string()));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("{}: {}", path.string(), e.what()));
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, fmt::format("{}: expected a JSON object", path.string()));
  try {
    if (j.contains("w1")) s.w1 = j.at("w1").get<double>();
    if (j.contains("w2")) s.w2 = j.at("w2").get<double>();
    if (j.contains("alpha")) s.options.alpha = j.at("alpha").get<double>();
    if (j.contains("gamma_lo")) s.options.gamma_lo = j.at("gamma_lo").get<double>();
    if (j.contains("gamma_hi")) s.options.gamma_hi = j.at("gamma_hi").get<double>();
    if (j.contains("peak_cap")) {
      const auto& cap = j.at("peak_cap");
      s.options.peak_cap = cap.is_null() ? std::nullopt : std::optional<double>(cap.get<double>());
    }
    if (j.contains("symmetric_violation")) {
      s.options.violation_mode =
          j.at("symmetric_violation").get<bool>() ? ViolationMode::Symmetric : ViolationMode::OneSided;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("{}: {}", path.string(), e.what()));
  }
  return s;
}

}  // namespace drpso
