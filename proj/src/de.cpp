#include "drpso/de.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "drpso/error.hpp"
#include "drpso/objective.hpp"
#include "drpso/result.hpp"

namespace drpso {

void DeConfig::validate() const {
  if (population_size < 4) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("population_size {} < 4", population_size));
  }
  if (iterations < 1) throw Error(ErrorCode::InvalidConfig, "iterations must be >= 1");
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("crossover probability {} not in [0, 1]", crossover_probability));
  }
  if (!(beta_min >= 0.2 && beta_min <= beta_max && beta_max <= 0.8)) {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("beta range [{}, {}] must lie within [0.2, 0.8]", beta_min, beta_max));
  }
}

Schedule mutate(const Schedule& a, const Schedule& b, const Schedule& c, double beta, const Schedule& lower,
                const Schedule& upper) {
  Schedule y{};
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    y[h] = std::clamp(a[h] + beta * (b[h] - c[h]), lower[h], upper[h]);
  }
  return y;
}

Schedule mutate_members(std::span<const Schedule> population, std::size_t a, std::size_t b, std::size_t c,
                        double beta, const Schedule& lower, const Schedule& upper) {
  const std::size_t n = population.size();
  if (a == b || b == c || a == c || a >= n || b >= n || c >= n) {
    throw Error(ErrorCode::NonDistinctParents, fmt::format("parents ({}, {}, {}) of {} members", a, b, c, n));
  }
  return mutate(population[a], population[b], population[c], beta, lower, upper);
}

std::array<std::size_t, 3> pick_parents(std::size_t target, std::size_t population_size, Rng& rng) {
  std::array<std::size_t, 3> picked{};
  for (std::size_t k = 0; k < picked.size(); ++k) {
    std::size_t candidate = 0;
    do {
      candidate = rng.index(population_size);
    } while (candidate == target || std::find(picked.begin(), picked.begin() + k, candidate) != picked.begin() + k);
    picked[k] = candidate;
  }
  return picked;
}

Schedule crossover(const Schedule& x, const Schedule& y, double pcr, std::size_t j0, const Schedule& r) {
  Schedule z{};
  for (std::size_t j = 0; j < kHoursPerDay; ++j) z[j] = (r[j] <= pcr || j == j0) ? y[j] : x[j];
  return z;
}

Schedule crossover(const Schedule& x, const Schedule& y, double pcr, Rng& rng) {
  const std::size_t j0 = rng.index(kHoursPerDay);
  Schedule r{};
  for (double& v : r) v = rng.uniform_closed();
  return crossover(x, y, pcr, j0, r);
}

OptimizationResult optimize_de(const DrProblem& problem, const DeConfig& config) {
  config.validate();
  problem.validate();
  Rng rng(config.seed);

  const std::size_t n = config.population_size;
  std::vector<Schedule> population(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 && config.seed_with_predicted) {
      population[i] = clamp_to_box(problem, problem.predicted.values());
    } else {
      for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        population[i][h] = rng.uniform(problem.lower[h], problem.upper[h]);
      }
    }
  }
  std::vector<ObjectiveBreakdown> fitness(n);
  for (std::size_t i = 0; i < n; ++i) fitness[i] = evaluate(problem, population[i]);

  auto best_index = [&] {
    std::size_t b = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (fitness[i].objective < fitness[b].objective) b = i;
    }
    return b;
  };

  std::vector<TracePoint> trace;
  trace.reserve(config.iterations + 1);
  std::size_t best = best_index();
  Schedule best_schedule = population[best];
  ObjectiveBreakdown best_eval = fitness[best];
  trace.push_back(trace_point(0, best_eval));

  std::vector<Schedule> trials(n);
  std::vector<ObjectiveBreakdown> trial_fitness(n);
  for (std::size_t gen = 1; gen <= config.iterations; ++gen) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto [a, b, c] = pick_parents(i, n, rng);
      const double beta = rng.uniform(config.beta_min, config.beta_max);
      const Schedule donor = mutate_members(population, a, b, c, beta, problem.lower, problem.upper);
      trials[i] = crossover(population[i], donor, config.crossover_probability, rng);
    }
    for (std::size_t i = 0; i < n; ++i) trial_fitness[i] = evaluate(problem, trials[i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (trial_fitness[i].objective < fitness[i].objective) {
        population[i] = trials[i];
        fitness[i] = trial_fitness[i];
      }
    }
    best = best_index();
    if (fitness[best].objective < best_eval.objective) {
      best_eval = fitness[best];
      best_schedule = population[best];
    }
    trace.push_back(trace_point(static_cast<int>(gen), best_eval));
  }

  OptimizationResult result = summarize(problem, best_schedule, "DE", config.seed);
  result.trace = std::move(trace);
  result.evaluations = n * (config.iterations + 1);
  return result;
}

}  // namespace drpso
