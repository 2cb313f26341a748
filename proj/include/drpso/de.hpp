#pragma once

// DE/rand/1/bin over the 24-hour schedule box, generation-synchronous with
// greedy replacement.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "drpso/data_model.hpp"
#include "drpso/rng.hpp"

namespace drpso {

struct DeConfig {
  std::size_t population_size = 50;
  std::size_t iterations = 100;
  double beta_min = 0.2;
  double beta_max = 0.8;
  double crossover_probability = 0.7;
  std::uint64_t seed = 0;
  bool seed_with_predicted = true;

  void validate() const;
};

/// a + beta * (b - c), clamped into [lower, upper].
Schedule mutate(const Schedule& a, const Schedule& b, const Schedule& c, double beta, const Schedule& lower,
                const Schedule& upper);

/// Mutation by population index; throws NonDistinctParents unless the three
/// indices are pairwise distinct and in range.
Schedule mutate_members(std::span<const Schedule> population, std::size_t a, std::size_t b, std::size_t c,
                        double beta, const Schedule& lower, const Schedule& upper);

/// Three pairwise distinct indices in [0, population_size), all != target.
std::array<std::size_t, 3> pick_parents(std::size_t target, std::size_t population_size, Rng& rng);

/// Binomial crossover with explicit draws: z_j = y_j if r_j <= pcr or j == j0.
Schedule crossover(const Schedule& x, const Schedule& y, double pcr, std::size_t j0, const Schedule& r);
/// Draws j0 uniformly in 0..23 and then r_j uniform in [0, 1].
Schedule crossover(const Schedule& x, const Schedule& y, double pcr, Rng& rng);

OptimizationResult optimize_de(const DrProblem& problem, const DeConfig& config);

}  // namespace drpso
