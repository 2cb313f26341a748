#include "drpso/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "drpso/error.hpp"

namespace drpso {

namespace {

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::optional<Date> parse_ymd(std::string_view text) {
  // YYYY-MM-DD
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) { return parse_ymd(text); }

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  if (text.size() < 13) return std::nullopt;
  auto day = parse_ymd(text.substr(0, 10));
  if (!day || (text[10] != 'T' && text[10] != ' ')) return std::nullopt;
  int hour = 0;
  if (!parse_int(text.substr(11, 2), hour) || hour < 0 || hour > 23) return std::nullopt;
  std::string_view rest = text.substr(13);
  // Optional ":00" and ":00" suffixes only; data is hourly.
  for (int part = 0; part < 2 && !rest.empty(); ++part) {
    if (rest.size() < 3 || rest[0] != ':') return std::nullopt;
    int value = 0;
    if (!parse_int(rest.substr(1, 2), value) || value != 0) return std::nullopt;
    rest.remove_prefix(3);
  }
  if (!rest.empty()) return std::nullopt;
  return Timestamp{*day} + std::chrono::hours{hour};
}

std::string format_date(Date day) {
  const std::chrono::year_month_day ymd{day};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::string format_timestamp(Timestamp ts) {
  const Date day = day_of(ts);
  const auto hour = (ts - Timestamp{day}).count();
  return fmt::format("{}T{:02d}:00", format_date(day), hour);
}

HourlyProfile::HourlyProfile(ProfileKind kind, const Schedule& values) : kind_(kind), values_(values) {
  for (std::size_t h = 0; h < values_.size(); ++h) {
    if (!std::isfinite(values_[h]) || values_[h] < 0.0) {
      throw Error(ErrorCode::InvalidProfile,
                  fmt::format("hour {} has value {} (must be finite and >= 0)", h + 1, values_[h]));
    }
  }
}

HourlyProfile HourlyProfile::from_span(ProfileKind kind, std::span<const double> values) {
  if (values.size() != kHoursPerDay) {
    throw Error(ErrorCode::InvalidProfile,
                fmt::format("expected {} hourly values, got {}", kHoursPerDay, values.size()));
  }
  Schedule s{};
  std::copy(values.begin(), values.end(), s.begin());
  return HourlyProfile(kind, s);
}

HourlyProfile HourlyProfile::scaled(double factor) const {
  Schedule s = values_;
  for (double& v : s) v *= factor;
  return HourlyProfile(kind_, s);
}

double peak(const HourlyProfile& profile) {
  return *std::max_element(profile.values().begin(), profile.values().end());
}

double total(const HourlyProfile& profile) {
  return std::accumulate(profile.values().begin(), profile.values().end(), 0.0);
}

std::size_t Dataset::training_count() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [this](const Record& r) { return is_training(r); }));
}

std::optional<std::size_t> Dataset::find(Timestamp ts) const {
  auto it = std::lower_bound(records.begin(), records.end(), ts,
                             [](const Record& r, Timestamp t) { return r.timestamp < t; });
  if (it == records.end() || it->timestamp != ts) return std::nullopt;
  return static_cast<std::size_t>(it - records.begin());
}

void DrProblem::validate() const {
  if (predicted.kind() != ProfileKind::Load || prices.kind() != ProfileKind::Price) {
    throw Error(ErrorCode::InvalidConfig, "problem needs a load forecast and a price profile");
  }
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    if (!(lower[h] >= 0.0) || !(lower[h] <= upper[h]) || !std::isfinite(upper[h])) {
      throw Error(ErrorCode::InvalidBounds,
                  fmt::format("hour {}: need 0 <= lower ({}) <= upper ({})", h + 1, lower[h], upper[h]));
    }
  }
  if (!(w1 >= 0.0) || !(w2 >= 0.0)) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("weights must be >= 0 (w1={}, w2={})", w1, w2));
  }
  if (!(e_cmax > 0.0) || !(l_shmax > 0.0) || !(alpha > 0.0)) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("e_cmax ({}), l_shmax ({}) and alpha ({}) must be > 0", e_cmax, l_shmax, alpha));
  }
}

}  // namespace drpso
