#pragma once

// Summary statistics and serialization: reduction percentages, weight sweeps,
// PSO-vs-DE comparisons, JSON / aligned-text / plot-ready CSV output.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "drpso/data_model.hpp"
#include "drpso/de.hpp"
#include "drpso/forecaster.hpp"
#include "drpso/objective.hpp"
#include "drpso/pso.hpp"

namespace drpso {

/// 100 * (before - after) / before. Throws ZeroBaseline unless before > 0.
double cost_reduction(double before, double after);
/// Same formula; named separately for peak loads.
double peak_reduction(double before, double after);

inline double cents_to_dollars(double cents) { return cents / 100.0; }

struct WeightSweepRow {
  double w1 = 0.0;
  double w2 = 0.0;
  double cost = 0.0;  // dollars
  double cost_reduction_pct = 0.0;
  double peak_reduction_pct = 0.0;
  double objective = 0.0;
  double violation = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const WeightSweepRow&, const WeightSweepRow&) = default;
};

struct WeightSweep {
  double baseline_cost = 0.0;  // dollars, predicted schedule without DR
  double baseline_peak = 0.0;
  std::vector<WeightSweepRow> rows;

  friend bool operator==(const WeightSweep&, const WeightSweep&) = default;
};

/// (0, 1), (0.1, 0.9), ..., (1, 0).
std::vector<std::pair<double, double>> standard_weight_grid();

/// Seed used by sweep row `row_index`; lets a single row be rerun alone.
std::uint64_t sweep_row_seed(std::uint64_t master_seed, std::size_t row_index);

/// One PSO run per weight pair, in input order. `pso.seed` is replaced by
/// sweep_row_seed(master_seed, row).
WeightSweep weight_sweep(const HourlyProfile& predicted, const HourlyProfile& prices,
                         std::span<const std::pair<double, double>> weights, const ProblemOptions& options,
                         const PsoConfig& pso, std::uint64_t master_seed);

struct ComparisonRow {
  std::string algorithm;
  double total_cost = 0.0;  // dollars
  double cost_reduction_pct = 0.0;
  double peak_reduction_pct = 0.0;
  double objective = 0.0;
  std::size_t evaluations = 0;
  bool budget_mismatch = false;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

struct Comparison {
  double baseline_cost = 0.0;  // dollars
  double baseline_peak = 0.0;
  bool budget_matched = true;
  std::vector<ComparisonRow> rows;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

ComparisonRow comparison_row(const OptimizationResult& result);

/// Runs PSO and DE on the same problem. A budget mismatch
/// (swarm_size * iterations != population_size * iterations) does not abort;
/// it clears `budget_matched` and flags both rows.
Comparison compare_algorithms(const DrProblem& problem, const PsoConfig& pso, const DeConfig& de);

// JSON
nlohmann::json to_json(const OptimizationResult& result);
nlohmann::json to_json(const FitReport& report);
nlohmann::json to_json(const WeightSweep& sweep);
nlohmann::json to_json(const Comparison& comparison);
WeightSweep weight_sweep_from_json(const nlohmann::json& j);
Comparison comparison_from_json(const nlohmann::json& j);
/// Stable formatting: two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

// Aligned text tables; costs in dollars with three decimals.
std::string format_sweep_table(const WeightSweep& sweep);
std::string format_comparison_table(const Comparison& comparison);
std::string format_result_summary(const OptimizationResult& result);

// Plot-ready CSV
void write_trace_csv(std::ostream& out, std::span<const TracePoint> trace);
void write_load_csv(std::ostream& out, const HourlyProfile& predicted, const HourlyProfile& optimized);
void write_cost_csv(std::ostream& out, const HourlyProfile& predicted, const HourlyProfile& optimized,
                    const HourlyProfile& prices);
void write_epoch_csv(std::ostream& out, std::span<const double> epoch_mse);
void write_real_vs_predicted_csv(std::ostream& out, const HourlyProfile& real, const HourlyProfile& predicted);
void write_profile_csv(std::ostream& out, const HourlyProfile& profile, std::string_view value_column);

/// Reads "hour,<value>" with exactly hours 1..24. Throws InvalidProfile for
/// the wrong number of rows.
HourlyProfile read_profile_csv(std::istream& in, ProfileKind kind, std::string_view source = "<stream>");

}  // namespace drpso
