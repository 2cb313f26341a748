#include "drpso/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "drpso/error.hpp"
#include "drpso/rng.hpp"

namespace drpso {

using nlohmann::json;

double cost_reduction(double before, double after) {
  if (!(before > 0.0)) throw Error(ErrorCode::ZeroBaseline, fmt::format("baseline {} must be > 0", before));
  return 100.0 * (before - after) / before;
}

double peak_reduction(double before, double after) { return cost_reduction(before, after); }

std::vector<std::pair<double, double>> standard_weight_grid() {
  std::vector<std::pair<double, double>> grid;
  for (int i = 0; i <= 10; ++i) grid.emplace_back(i / 10.0, (10 - i) / 10.0);
  return grid;
}

std::uint64_t sweep_row_seed(std::uint64_t master_seed, std::size_t row_index) {
  return derive_seed(master_seed, "sweep", row_index);
}

WeightSweep weight_sweep(const HourlyProfile& predicted, const HourlyProfile& prices,
                         std::span<const std::pair<double, double>> weights, const ProblemOptions& options,
                         const PsoConfig& pso, std::uint64_t master_seed) {
  WeightSweep sweep;
  sweep.baseline_cost = cents_to_dollars(energy_cost(predicted, prices));
  sweep.baseline_peak = peak(predicted);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto [w1, w2] = weights[i];
    if (!(w1 >= 0.0) || !(w2 >= 0.0)) {
      throw Error(ErrorCode::InvalidConfig, fmt::format("weight pair ({}, {}) must be non-negative", w1, w2));
    }
    const DrProblem problem = build_problem(predicted, prices, w1, w2, options);
    PsoConfig cfg = pso;
    cfg.seed = sweep_row_seed(master_seed, i);
    const OptimizationResult r = optimize_pso(problem, cfg);
    WeightSweepRow row;
    row.w1 = w1;
    row.w2 = w2;
    row.cost = cents_to_dollars(r.cost);
    row.cost_reduction_pct = cost_reduction(r.baseline_cost, r.cost);
    row.peak_reduction_pct = peak_reduction(r.peak_before, r.peak_after);
    row.objective = r.objective;
    row.violation = r.violation;
    row.seed = cfg.seed;
    sweep.rows.push_back(row);
  }
  return sweep;
}

ComparisonRow comparison_row(const OptimizationResult& r) {
  ComparisonRow row;
  row.algorithm = r.algorithm;
  row.total_cost = cents_to_dollars(r.cost);
  row.cost_reduction_pct = cost_reduction(r.baseline_cost, r.cost);
  row.peak_reduction_pct = peak_reduction(r.peak_before, r.peak_after);
  row.objective = r.objective;
  row.evaluations = r.evaluations;
  return row;
}

Comparison compare_algorithms(const DrProblem& problem, const PsoConfig& pso, const DeConfig& de) {
  Comparison c;
  c.baseline_cost = cents_to_dollars(energy_cost(problem.predicted, problem.prices));
  c.baseline_peak = peak(problem.predicted);
  c.budget_matched = pso.swarm_size * pso.iterations == de.population_size * de.iterations;
  c.rows.push_back(comparison_row(optimize_pso(problem, pso)));
  c.rows.push_back(comparison_row(optimize_de(problem, de)));
  for (auto& row : c.rows) row.budget_mismatch = !c.budget_matched;
  return c;
}

// ---------------------------------------------------------------- JSON

namespace {

json schedule_json(const HourlyProfile& p) { return json(std::vector<double>(p.values().begin(), p.values().end())); }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const OptimizationResult& r) {
  json trace = json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"iteration", t.iteration},
                     {"best_objective", t.best_objective},
                     {"best_cost", t.best_cost},
                     {"best_shift", t.best_shift},
                     {"violation", t.violation}});
  }
  return json{{"algorithm", r.algorithm},
              {"rng_seed", r.rng_seed},
              {"evaluations", r.evaluations},
              {"objective", r.objective},
              {"cost_cents", r.cost},
              {"cost_dollars", cents_to_dollars(r.cost)},
              {"baseline_cost_dollars", cents_to_dollars(r.baseline_cost)},
              {"cost_reduction_pct", r.baseline_cost > 0.0 ? cost_reduction(r.baseline_cost, r.cost) : 0.0},
              {"load_shift_kwh", r.load_shift},
              {"violation", r.violation},
              {"violation_flagged", r.violation_flagged()},
              {"peak_before", r.peak_before},
              {"peak_after", r.peak_after},
              {"peak_reduction_pct", r.peak_before > 0.0 ? peak_reduction(r.peak_before, r.peak_after) : 0.0},
              {"best_schedule_kwh", schedule_json(r.best_schedule)},
              {"trace", trace}};
}

json to_json(const FitReport& f) {
  return json{{"train_mse", f.train_mse},
              {"test_mse", optional_json(f.test_mse)},
              {"train_correlation", optional_json(f.train_correlation)},
              {"test_correlation", optional_json(f.test_correlation)},
              {"train_windows", f.train_windows},
              {"test_windows", f.test_windows},
              {"epochs", f.epoch_train_mse.size()}};
}

json to_json(const WeightSweep& s) {
  json rows = json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"w1", r.w1},
                    {"w2", r.w2},
                    {"cost_dollars", r.cost},
                    {"cost_reduction_pct", r.cost_reduction_pct},
                    {"peak_reduction_pct", r.peak_reduction_pct},
                    {"objective", r.objective},
                    {"violation", r.violation},
                    {"seed", r.seed}});
  }
  return json{{"baseline_cost_dollars", s.baseline_cost}, {"baseline_peak", s.baseline_peak}, {"rows", rows}};
}

json to_json(const Comparison& c) {
  json rows = json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"algorithm", r.algorithm},
                    {"total_cost_dollars", r.total_cost},
                    {"cost_reduction_pct", r.cost_reduction_pct},
                    {"peak_reduction_pct", r.peak_reduction_pct},
                    {"objective", r.objective},
                    {"evaluations", r.evaluations},
                    {"budget_mismatch", r.budget_mismatch}});
  }
  return json{{"baseline_cost_dollars", c.baseline_cost},
              {"baseline_peak", c.baseline_peak},
              {"budget_matched", c.budget_matched},
              {"rows", rows}};
}

WeightSweep weight_sweep_from_json(const json& j) {
  try {
    WeightSweep s;
    s.baseline_cost = j.at("baseline_cost_dollars").get<double>();
    s.baseline_peak = j.at("baseline_peak").get<double>();
    for (const auto& r : j.at("rows")) {
      s.rows.push_back(WeightSweepRow{r.at("w1").get<double>(), r.at("w2").get<double>(),
                                      r.at("cost_dollars").get<double>(), r.at("cost_reduction_pct").get<double>(),
                                      r.at("peak_reduction_pct").get<double>(), r.at("objective").get<double>(),
                                      r.at("violation").get<double>(), r.at("seed").get<std::uint64_t>()});
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("bad sweep JSON: {}", e.what()));
  }
}

Comparison comparison_from_json(const json& j) {
  try {
    Comparison c;
    c.baseline_cost = j.at("baseline_cost_dollars").get<double>();
    c.baseline_peak = j.at("baseline_peak").get<double>();
    c.budget_matched = j.at("budget_matched").get<bool>();
    for (const auto& r : j.at("rows")) {
      c.rows.push_back(ComparisonRow{r.at("algorithm").get<std::string>(), r.at("total_cost_dollars").get<double>(),
                                     r.at("cost_reduction_pct").get<double>(),
                                     r.at("peak_reduction_pct").get<double>(), r.at("objective").get<double>(),
                                     r.at("evaluations").get<std::size_t>(), r.at("budget_mismatch").get<bool>()});
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("bad comparison JSON: {}", e.what()));
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- tables

std::string format_sweep_table(const WeightSweep& s) {
  std::string out = fmt::format("No-DR cost: {:.3f} $   peak: {:.3f}\n", s.baseline_cost, s.baseline_peak);
  out += fmt::format("{:>5} {:>5} {:>14} {:>10} {:>10} {:>10}\n", "w1", "w2", "Cost ($)", "Cost red%", "Peak red%",
                     "Violation");
  for (const auto& r : s.rows) {
    out += fmt::format("{:>5.1f} {:>5.1f} {:>14.3f} {:>10.2f} {:>10.2f} {:>10.4f}\n", r.w1, r.w2, r.cost,
                       r.cost_reduction_pct, r.peak_reduction_pct, r.violation);
  }
  return out;
}

std::string format_comparison_table(const Comparison& c) {
  std::string out = fmt::format("No-DR cost: {:.3f} $   peak: {:.3f}   budget: {}\n", c.baseline_cost,
                                c.baseline_peak, c.budget_matched ? "matched" : "MISMATCHED");
  out += fmt::format("{:<9} {:>14} {:>10} {:>10} {:>12} {:>8}\n", "Algorithm", "Total cost ($)", "Cost red%",
                     "Peak red%", "Objective", "Evals");
  for (const auto& r : c.rows) {
    out += fmt::format("{:<9} {:>14.3f} {:>10.2f} {:>10.2f} {:>12.6f} {:>8}{}\n", r.algorithm, r.total_cost,
                       r.cost_reduction_pct, r.peak_reduction_pct, r.objective, r.evaluations,
                       r.budget_mismatch ? " *" : "");
  }
  return out;
}

std::string format_result_summary(const OptimizationResult& r) {
  std::string out;
  out += fmt::format("algorithm      {}\n", r.algorithm);
  out += fmt::format("objective      {:.6f}\n", r.objective);
  out += fmt::format("cost           {:.3f} $ (no DR {:.3f} $, {:.2f}% reduction)\n", cents_to_dollars(r.cost),
                     cents_to_dollars(r.baseline_cost),
                     r.baseline_cost > 0.0 ? cost_reduction(r.baseline_cost, r.cost) : 0.0);
  out += fmt::format("peak           {:.3f} -> {:.3f} ({:.2f}% reduction)\n", r.peak_before, r.peak_after,
                     r.peak_before > 0.0 ? peak_reduction(r.peak_before, r.peak_after) : 0.0);
  out += fmt::format("load shift     {:.3f} kWh\n", r.load_shift);
  out += fmt::format("violation      {:.6f}{}\n", r.violation, r.violation_flagged() ? "  [FLAGGED]" : "");
  return out;
}

// ---------------------------------------------------------------- CSV

void write_trace_csv(std::ostream& out, std::span<const TracePoint> trace) {
  out << "iteration,best_objective,best_cost,best_shift,violation\n";
  for (const auto& t : trace) {
    out << fmt::format("{},{},{},{},{}\n", t.iteration, t.best_objective, t.best_cost, t.best_shift, t.violation);
  }
}

void write_load_csv(std::ostream& out, const HourlyProfile& predicted, const HourlyProfile& optimized) {
  out << "hour,predicted_kwh,optimized_kwh\n";
  for (std::size_t h = 0; h < kHoursPerDay; ++h) out << fmt::format("{},{},{}\n", h + 1, predicted[h], optimized[h]);
}

void write_cost_csv(std::ostream& out, const HourlyProfile& predicted, const HourlyProfile& optimized,
                    const HourlyProfile& prices) {
  out << "hour,predicted_cost,optimized_cost\n";
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    out << fmt::format("{},{},{}\n", h + 1, cents_to_dollars(predicted[h] * prices[h]),
                       cents_to_dollars(optimized[h] * prices[h]));
  }
}

void write_epoch_csv(std::ostream& out, std::span<const double> epoch_mse) {
  out << "epoch,train_mse\n";
  for (std::size_t e = 0; e < epoch_mse.size(); ++e) out << fmt::format("{},{}\n", e + 1, epoch_mse[e]);
}

void write_real_vs_predicted_csv(std::ostream& out, const HourlyProfile& real, const HourlyProfile& predicted) {
  out << "hour,real,predicted\n";
  for (std::size_t h = 0; h < kHoursPerDay; ++h) out << fmt::format("{},{},{}\n", h + 1, real[h], predicted[h]);
}

void write_profile_csv(std::ostream& out, const HourlyProfile& profile, std::string_view value_column) {
  out << "hour," << value_column << '\n';
  for (std::size_t h = 0; h < kHoursPerDay; ++h) out << fmt::format("{},{}\n", h + 1, profile[h]);
}

HourlyProfile read_profile_csv(std::istream& in, ProfileKind kind, std::string_view source) {
  const ErrorCode shape_error = kind == ProfileKind::Price ? ErrorCode::MissingPrices : ErrorCode::InvalidProfile;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  Schedule values{};
  std::array<bool, kHoursPerDay> seen{};
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("hour", 0) != 0) {
        throw Error(ErrorCode::MissingColumn, fmt::format("{}: header must start with 'hour'", source));
      }
      continue;
    }
    const auto comma = line.find(',');
    int hour = 0;
    double value = 0.0;
    const std::string hour_text = line.substr(0, comma);
    const std::string value_text = comma == std::string::npos ? "" : line.substr(comma + 1);
    auto [hp, hec] = std::from_chars(hour_text.data(), hour_text.data() + hour_text.size(), hour);
    auto [vp, vec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (hec != std::errc{} || vec != std::errc{} || hp != hour_text.data() + hour_text.size() ||
        vp != value_text.data() + value_text.size()) {
      throw Error(ErrorCode::UnparseableRow, fmt::format("{}: line {}: '{}'", source, line_no, line));
    }
    if (hour < 1 || hour > static_cast<int>(kHoursPerDay) || seen[static_cast<std::size_t>(hour - 1)]) {
      throw Error(shape_error, fmt::format("{}: line {}: hour {} out of range or repeated", source, line_no, hour));
    }
    seen[static_cast<std::size_t>(hour - 1)] = true;
    values[static_cast<std::size_t>(hour - 1)] = value;
    ++rows;
  }
  if (rows != kHoursPerDay) {
    throw Error(shape_error, fmt::format("{}: expected 24 hourly rows, found {}", source, rows));
  }
  return HourlyProfile(kind, values);
}

}  // namespace drpso
