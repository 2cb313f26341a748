#pragma once

// Core domain types: hourly profiles, weather/load datasets, the demand
// response problem and optimizer results.
//
// Units: hourly load in kWh, prices in cents/kWh, costs in cents. Hours are
// 0..23 in memory and 1..24 in every file format.

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drpso {

inline constexpr std::size_t kHoursPerDay = 24;

using Schedule = std::array<double, kHoursPerDay>;

using Timestamp = std::chrono::sys_time<std::chrono::hours>;
using Date = std::chrono::sys_days;

/// Parses "YYYY-MM-DDTHH[:MM[:SS]]" (a space may replace the 'T'). Minutes and
/// seconds must be zero. Returns nullopt on malformed input.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::optional<Date> parse_date(std::string_view text);
std::string format_timestamp(Timestamp ts);
std::string format_date(Date day);
inline Date day_of(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

enum class ProfileKind { Load, Price };

/// One value per hour of a day. Entries are finite and non-negative.
class HourlyProfile {
 public:
  HourlyProfile() = default;
  HourlyProfile(ProfileKind kind, const Schedule& values);

  /// Throws InvalidProfile unless `values` has exactly 24 entries.
  static HourlyProfile from_span(ProfileKind kind, std::span<const double> values);

  ProfileKind kind() const noexcept { return kind_; }
  const Schedule& values() const noexcept { return values_; }
  double operator[](std::size_t hour) const { return values_[hour]; }

  HourlyProfile scaled(double factor) const;

  friend bool operator==(const HourlyProfile&, const HourlyProfile&) = default;

 private:
  ProfileKind kind_ = ProfileKind::Load;
  Schedule values_{};
};

double peak(const HourlyProfile& profile);
double total(const HourlyProfile& profile);

struct WeatherRecord {
  double wind_speed = 0.0;
  double temperature = 0.0;
  double heat_index = 0.0;
  double cold_index = 0.0;
  double dew_point = 0.0;

  static constexpr std::size_t kFeatureCount = 5;
  std::array<double, kFeatureCount> features() const {
    return {wind_speed, temperature, heat_index, cold_index, dew_point};
  }
};

struct Record {
  Timestamp timestamp;
  WeatherRecord weather;
  double load_kwh = 0.0;
  std::optional<double> price;  // cents/kWh
};

/// Hourly time series sorted by timestamp. Records at or after
/// `split_boundary` form the test partition.
struct Dataset {
  std::vector<Record> records;
  Timestamp split_boundary = Timestamp::max();

  bool is_training(const Record& r) const { return r.timestamp < split_boundary; }
  std::size_t training_count() const;
  /// Index of the record at `ts`, if present.
  std::optional<std::size_t> find(Timestamp ts) const;
};

enum class ViolationMode { OneSided, Symmetric };

/// A single-day load-shifting instance: minimize
///   w1 * cost / e_cmax + w2 * shift / l_shmax + alpha * violation
/// over schedules inside [lower, upper].
struct DrProblem {
  HourlyProfile predicted;
  HourlyProfile prices{ProfileKind::Price, Schedule{}};
  Schedule lower{};
  Schedule upper{};
  double w1 = 0.5;
  double w2 = 0.5;
  double alpha = 100.0;
  double e_cmax = 1.0;   // cents
  double l_shmax = 1.0;  // kWh
  ViolationMode violation_mode = ViolationMode::OneSided;

  /// Throws InvalidBounds / InvalidConfig when an invariant does not hold.
  void validate() const;
};

struct TracePoint {
  int iteration = 0;
  double best_objective = 0.0;
  double best_cost = 0.0;
  double best_shift = 0.0;
  double violation = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct OptimizationResult {
  std::string algorithm;
  HourlyProfile best_schedule;
  double objective = 0.0;
  double cost = 0.0;        // cents
  double load_shift = 0.0;  // kWh
  double violation = 0.0;
  double baseline_cost = 0.0;  // cost of the predicted schedule, cents
  double peak_before = 0.0;
  double peak_after = 0.0;
  std::vector<TracePoint> trace;
  std::uint64_t rng_seed = 0;
  std::size_t evaluations = 0;

  bool violation_flagged() const { return violation > 0.0; }
};

}  // namespace drpso
