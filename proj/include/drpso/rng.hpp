#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace drpso {

/// Seeded generator with distribution code written out here rather than taken
/// from <random>, whose distributions differ between standard libraries. The
/// same seed therefore gives the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, 1]; used where a closed interval is part of the contract.
  double uniform_closed() {
    return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740991.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  /// Standard normal via Box-Muller.
  double normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Derives an independent seed for a named component, e.g. ("sweep", 3).
/// Lets a single master seed drive every stochastic part of a run while each
/// part stays reproducible on its own.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index = 0);

}  // namespace drpso
