#pragma once

// Seeded synthetic weather/load/price series in the ingest CSV layout.
//
//   temperature = seasonal + diurnal + persistent daily anomaly + noise
//   load        = base + diurnal shape + coupling * (temperature - 18) + noise
//   price       = base + diurnal swing + evening peak + noise

#include <cstdint>

#include "drpso/data_model.hpp"

namespace drpso {

struct SynthOptions {
  int days = 120;
  std::uint64_t seed = 0;
  Date start = Date{std::chrono::year{2010} / 1 / 1};
  double base_load = 40000.0;          // kWh per hour
  double daily_amplitude = 7000.0;     // kWh
  double temperature_coupling = 900.0; // kWh per degree
  double noise_fraction = 0.01;        // of the noiseless load
  double price_base = 2.2;             // cents/kWh
  double price_evening_peak = 3.0;     // cents/kWh added around the peak hour
  int price_peak_hour = 18;

  void validate() const;
};

/// Throws InvalidConfig when days < 3.
Dataset generate_dataset(const SynthOptions& options);

struct DayInstance {
  Date day;
  HourlyProfile load;
  HourlyProfile prices;
};

/// The last day of a generated series; a ready-made demand-response day with
/// an evening price peak.
DayInstance synthetic_day(std::uint64_t seed, int days = 7);

}  // namespace drpso
