#pragma once

// CSV ingestion, train/test partitioning, [-1, 1] feature scaling and
// construction of supervised day-ahead windows.
//
// CSV layout (header required, any column order):
//   timestamp,wind_speed,temperature,heat_index,cold_index,dew_point,load_kwh[,price_c_per_kwh]

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "drpso/data_model.hpp"

namespace drpso {

/// Maps logical columns to header names.
struct CsvSchema {
  std::string timestamp = "timestamp";
  std::string wind_speed = "wind_speed";
  std::string temperature = "temperature";
  std::string heat_index = "heat_index";
  std::string cold_index = "cold_index";
  std::string dew_point = "dew_point";
  std::string load = "load_kwh";
  std::string price = "price_c_per_kwh";  // optional column
};

struct LoadOptions {
  CsvSchema schema;
  /// Accept gaps in the hourly cadence. Windows that span a gap are dropped.
  bool allow_gaps = false;
};

Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options = {});
Dataset parse_dataset(std::istream& in, const LoadOptions& options = {}, std::string_view source = "<stream>");

void write_dataset(std::ostream& out, const Dataset& dataset);
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);

Dataset split_at(Dataset dataset, Timestamp boundary);
/// Places the boundary at the start of the day closest to `train_fraction`
/// of the records.
Dataset split_chronological(Dataset dataset, double train_fraction);

/// Load and price for one calendar day. Throws InsufficientHistory if any hour
/// is absent and MissingPrices if a price is absent.
HourlyProfile day_loads(const Dataset& dataset, Date day);
HourlyProfile day_prices(const Dataset& dataset, Date day);

struct FeatureRange {
  std::string name;
  double min = 0.0;
  double max = 1.0;

  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

/// Ranges for the five weather features followed by load.
struct NormalizationStats {
  static constexpr std::size_t kLoadIndex = WeatherRecord::kFeatureCount;

  std::vector<FeatureRange> ranges;

  const FeatureRange& load() const { return ranges.at(kLoadIndex); }

  friend bool operator==(const NormalizationStats&, const NormalizationStats&) = default;
};

/// Fits min/max over training rows only. Throws InsufficientData with fewer
/// than two training rows and DegenerateFeature for a constant column.
NormalizationStats fit_normalizer(const Dataset& dataset);

/// min -> -1, max -> +1, linear, unclamped.
double normalize(double x, const FeatureRange& range);
double denormalize(double y, const FeatureRange& range);

/// Weather at the target hour followed by `lag` loads (oldest first) ending 24
/// hours before the target. Values are in raw units.
struct TrainingWindow {
  std::vector<double> features;
  double target = 0.0;
  Timestamp target_time;
  bool is_test = false;
};

/// One window per gap-free run of lag + 24 consecutive hours. A window is a
/// test window when its target lies in the test partition. Throws
/// InsufficientData when no window can be built.
std::vector<TrainingWindow> build_windows(const Dataset& dataset, std::size_t lag);

}  // namespace drpso
