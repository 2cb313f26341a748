#include "drpso/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "drpso/error.hpp"
#include "drpso/ingest.hpp"
#include "drpso/rng.hpp"

namespace drpso {

void SynthOptions::validate() const {
  if (days < 3) throw Error(ErrorCode::InvalidConfig, fmt::format("days must be >= 3, got {}", days));
  if (price_peak_hour < 0 || price_peak_hour > 23) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("price peak hour {} not in 0..23", price_peak_hour));
  }
  if (!(base_load > 0.0) || !(noise_fraction >= 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "base_load must be > 0 and noise_fraction >= 0");
  }
}

Dataset generate_dataset(const SynthOptions& o) {
  o.validate();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  Rng weather_rng(derive_seed(o.seed, "synth.weather"));
  Rng load_rng(derive_seed(o.seed, "synth.load"));
  Rng price_rng(derive_seed(o.seed, "synth.price"));

  const auto year_start = Date{std::chrono::year_month_day{o.start}.year() / 1 / 1};
  Dataset ds;
  ds.records.reserve(static_cast<std::size_t>(o.days) * kHoursPerDay);
  double anomaly = 0.0;
  double wind = 4.0;
  for (int d = 0; d < o.days; ++d) {
    const Date day = o.start + std::chrono::days{d};
    const double doy = static_cast<double>((day - year_start).count());
    anomaly = 0.7 * anomaly + 1.5 * weather_rng.normal();
    const double seasonal = 20.0 + 9.0 * std::sin(two_pi * (doy - 105.0) / 365.0);
    for (int h = 0; h < static_cast<int>(kHoursPerDay); ++h) {
      Record r;
      r.timestamp = Timestamp{day} + std::chrono::hours{h};
      const double diurnal = 5.0 * std::sin(two_pi * (h - 9) / 24.0);
      const double temp = seasonal + diurnal + anomaly + 0.3 * weather_rng.normal();
      wind = std::max(0.0, 0.85 * wind + 0.15 * 4.0 + 0.6 * weather_rng.normal());
      const double dew = temp - 4.0 - 2.0 * (1.0 + std::sin(two_pi * (h - 12) / 24.0)) + 0.3 * weather_rng.normal();
      r.weather.temperature = temp;
      r.weather.wind_speed = wind;
      r.weather.dew_point = dew;
      r.weather.heat_index = temp + 0.25 * std::max(dew - 10.0, 0.0);
      r.weather.cold_index = temp - 0.4 * wind;

      // Residential shape: overnight trough, morning shoulder, evening peak.
      const double shape = std::sin(two_pi * (h - 11) / 24.0) + 0.35 * std::sin(two_pi * (h - 4) / 12.0);
      const double clean = o.base_load + o.daily_amplitude * shape + o.temperature_coupling * (temp - 18.0);
      r.load_kwh = std::max(0.0, clean * (1.0 + o.noise_fraction * load_rng.normal()));

      const double dh = static_cast<double>(h - o.price_peak_hour);
      const double price = o.price_base + 0.6 * std::sin(two_pi * (h - 10) / 24.0) +
                           o.price_evening_peak * std::exp(-0.5 * dh * dh / 4.0) + 0.08 * price_rng.normal();
      r.price = std::max(0.1, price);
      ds.records.push_back(r);
    }
  }
  return ds;
}

DayInstance synthetic_day(std::uint64_t seed, int days) {
  SynthOptions o;
  o.days = days;
  o.seed = seed;
  const Dataset ds = generate_dataset(o);
  const Date last = day_of(ds.records.back().timestamp);
  return DayInstance{last, day_loads(ds, last), day_prices(ds, last)};
}

}  // namespace drpso
