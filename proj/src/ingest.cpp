#include "drpso/ingest.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "drpso/error.hpp"

namespace drpso {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::size_t require_column(const std::vector<std::string_view>& header, const std::string& name,
                           std::string_view source) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw Error(ErrorCode::MissingColumn, fmt::format("{}: column '{}' not found in header", source, name));
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

Dataset parse_dataset(std::istream& in, const LoadOptions& options, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) {
    throw Error(ErrorCode::MissingColumn, fmt::format("{}: empty file, header required", source));
  }
  const std::string header_line = line;
  const auto header = split_csv(header_line);
  const CsvSchema& s = options.schema;
  const std::size_t c_ts = require_column(header, s.timestamp, source);
  const std::array<std::size_t, WeatherRecord::kFeatureCount> c_weather{
      require_column(header, s.wind_speed, source), require_column(header, s.temperature, source),
      require_column(header, s.heat_index, source), require_column(header, s.cold_index, source),
      require_column(header, s.dew_point, source)};
  const std::size_t c_load = require_column(header, s.load, source);
  const auto price_it = std::find(header.begin(), header.end(), s.price);
  const std::optional<std::size_t> c_price =
      price_it == header.end() ? std::nullopt : std::optional<std::size_t>(price_it - header.begin());

  Dataset ds;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    auto bad = [&](std::string_view why) {
      return Error(ErrorCode::UnparseableRow, fmt::format("{}: line {}: {}", source, line_no, why));
    };
    if (cells.size() != header.size()) {
      throw bad(fmt::format("expected {} cells, found {}", header.size(), cells.size()));
    }
    Record r;
    auto ts = parse_timestamp(cells[c_ts]);
    if (!ts) throw bad(fmt::format("bad timestamp '{}'", cells[c_ts]));
    r.timestamp = *ts;
    std::array<double, WeatherRecord::kFeatureCount> w{};
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!parse_double(cells[c_weather[i]], w[i])) {
        throw bad(fmt::format("bad number '{}' in column '{}'", cells[c_weather[i]], header[c_weather[i]]));
      }
    }
    r.weather = WeatherRecord{w[0], w[1], w[2], w[3], w[4]};
    if (!parse_double(cells[c_load], r.load_kwh) || r.load_kwh < 0.0) {
      throw bad(fmt::format("bad load '{}'", cells[c_load]));
    }
    if (c_price && !cells[*c_price].empty()) {
      double p = 0.0;
      if (!parse_double(cells[*c_price], p) || p < 0.0) {
        throw bad(fmt::format("bad price '{}'", cells[*c_price]));
      }
      r.price = p;
    }
    ds.records.push_back(r);
  }

  std::stable_sort(ds.records.begin(), ds.records.end(),
                   [](const Record& a, const Record& b) { return a.timestamp < b.timestamp; });
  for (std::size_t i = 1; i < ds.records.size(); ++i) {
    const auto step = ds.records[i].timestamp - ds.records[i - 1].timestamp;
    if (step == std::chrono::hours{1}) continue;
    if (step > std::chrono::hours{1} && options.allow_gaps) continue;
    throw Error(ErrorCode::NonHourlyCadence,
                fmt::format("{}: {} follows {} ({} h step)", source, format_timestamp(ds.records[i].timestamp),
                            format_timestamp(ds.records[i - 1].timestamp), step.count()));
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open '{}'", path.string()));
  return parse_dataset(in, options, path.string());
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  const bool with_price = std::any_of(dataset.records.begin(), dataset.records.end(),
                                      [](const Record& r) { return r.price.has_value(); });
  out << "timestamp,wind_speed,temperature,heat_index,cold_index,dew_point,load_kwh";
  if (with_price) out << ",price_c_per_kwh";
  out << '\n';
  for (const Record& r : dataset.records) {
    const auto& w = r.weather;
    out << fmt::format("{},{},{},{},{},{},{}", format_timestamp(r.timestamp), w.wind_speed, w.temperature,
                       w.heat_index, w.cold_index, w.dew_point, r.load_kwh);
    if (with_price) {
      out << ',';
      if (r.price) out << fmt::format("{}", *r.price);
    }
    out << '\n';
  }
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write '{}'", path.string()));
  write_dataset(out, dataset);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("write failed for '{}'", path.string()));
}

Dataset split_at(Dataset dataset, Timestamp boundary) {
  dataset.split_boundary = boundary;
  return dataset;
}

Dataset split_chronological(Dataset dataset, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("train fraction {} not in (0, 1]", train_fraction));
  }
  if (dataset.records.empty() || train_fraction == 1.0) {
    dataset.split_boundary = Timestamp::max();
    return dataset;
  }
  const auto n = dataset.records.size();
  const auto idx = std::min(n - 1, static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n))));
  const Timestamp at = dataset.records[idx].timestamp;
  Timestamp boundary = Timestamp{day_of(at)};
  if (at - boundary >= std::chrono::hours{12}) boundary += std::chrono::hours{24};
  dataset.split_boundary = boundary;
  return dataset;
}

namespace {

template <typename Pick>
HourlyProfile day_profile(const Dataset& dataset, Date day, ProfileKind kind, Pick pick) {
  Schedule values{};
  const Timestamp start{day};
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    const Timestamp ts = start + std::chrono::hours{static_cast<int>(h)};
    const auto idx = dataset.find(ts);
    if (!idx) {
      throw Error(ErrorCode::InsufficientHistory, fmt::format("no record for {}", format_timestamp(ts)));
    }
    values[h] = pick(dataset.records[*idx], ts);
  }
  return HourlyProfile(kind, values);
}

}  // namespace

HourlyProfile day_loads(const Dataset& dataset, Date day) {
  return day_profile(dataset, day, ProfileKind::Load, [](const Record& r, Timestamp) { return r.load_kwh; });
}

HourlyProfile day_prices(const Dataset& dataset, Date day) {
  return day_profile(dataset, day, ProfileKind::Price, [](const Record& r, Timestamp ts) {
    if (!r.price) throw Error(ErrorCode::MissingPrices, fmt::format("no price for {}", format_timestamp(ts)));
    return *r.price;
  });
}

NormalizationStats fit_normalizer(const Dataset& dataset) {
  static const std::array<const char*, 6> kNames{"wind_speed", "temperature", "heat_index",
                                                 "cold_index", "dew_point",   "load_kwh"};
  NormalizationStats stats;
  for (const char* name : kNames) {
    stats.ranges.push_back(FeatureRange{name, std::numeric_limits<double>::infinity(),
                                        -std::numeric_limits<double>::infinity()});
  }
  std::size_t count = 0;
  for (const Record& r : dataset.records) {
    if (!dataset.is_training(r)) continue;
    ++count;
    const auto w = r.weather.features();
    for (std::size_t i = 0; i < w.size(); ++i) {
      stats.ranges[i].min = std::min(stats.ranges[i].min, w[i]);
      stats.ranges[i].max = std::max(stats.ranges[i].max, w[i]);
    }
    auto& load = stats.ranges[NormalizationStats::kLoadIndex];
    load.min = std::min(load.min, r.load_kwh);
    load.max = std::max(load.max, r.load_kwh);
  }
  if (count < 2) {
    throw Error(ErrorCode::InsufficientData, fmt::format("need at least 2 training rows, have {}", count));
  }
  for (const auto& range : stats.ranges) {
    if (!(range.max > range.min)) {
      throw Error(ErrorCode::DegenerateFeature,
                  fmt::format("feature '{}' is constant ({}) over the training rows", range.name, range.min));
    }
  }
  return stats;
}

double normalize(double x, const FeatureRange& range) {
  return 2.0 * (x - range.min) / (range.max - range.min) - 1.0;
}

double denormalize(double y, const FeatureRange& range) {
  return (y + 1.0) * 0.5 * (range.max - range.min) + range.min;
}

std::vector<TrainingWindow> build_windows(const Dataset& dataset, std::size_t lag) {
  if (lag < 1) throw Error(ErrorCode::InvalidConfig, "lag must be >= 1");
  const auto& rec = dataset.records;
  const std::size_t span = lag + kHoursPerDay;  // rows covered by one window
  std::vector<TrainingWindow> windows;
  if (rec.size() >= span) {
    const auto expected = std::chrono::hours{static_cast<int>(span - 1)};
    for (std::size_t first = 0; first + span <= rec.size(); ++first) {
      const std::size_t target = first + span - 1;
      if (rec[target].timestamp - rec[first].timestamp != expected) continue;  // spans a gap
      TrainingWindow w;
      w.features.reserve(WeatherRecord::kFeatureCount + lag);
      for (double f : rec[target].weather.features()) w.features.push_back(f);
      for (std::size_t i = first; i < first + lag; ++i) w.features.push_back(rec[i].load_kwh);
      w.target = rec[target].load_kwh;
      w.target_time = rec[target].timestamp;
      w.is_test = !dataset.is_training(rec[target]);
      windows.push_back(std::move(w));
    }
  }
  if (windows.empty()) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("{} rows cannot form a window of lag {} + 24 hours", rec.size(), lag));
  }
  return windows;
}

}  // namespace drpso
