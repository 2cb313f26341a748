#include "drpso/pso.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "drpso/error.hpp"
#include "drpso/objective.hpp"
#include "drpso/result.hpp"

namespace drpso {

void PsoConfig::validate() const {
  if (swarm_size < 2) throw Error(ErrorCode::InvalidConfig, fmt::format("swarm_size {} < 2", swarm_size));
  if (iterations < 1) throw Error(ErrorCode::InvalidConfig, "iterations must be >= 1");
  if (!(v_max_fraction > 0.0)) throw Error(ErrorCode::InvalidConfig, "v_max_fraction must be > 0");
  if (!(w >= 0.0) || !(c1 >= 0.0) || !(c2 >= 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "w, c1 and c2 must be >= 0");
  }
}

Schedule max_velocity(const DrProblem& problem, double v_max_fraction) {
  Schedule v{};
  for (std::size_t h = 0; h < kHoursPerDay; ++h) v[h] = v_max_fraction * (problem.upper[h] - problem.lower[h]);
  return v;
}

Schedule velocity_update(const Particle& p, const Schedule& gbest, const PsoConfig& c, const Schedule& v_max,
                         const Schedule& r1, const Schedule& r2) {
  Schedule v{};
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    const double raw = c.w * p.velocity[h] + c.c1 * r1[h] * (p.best_position[h] - p.position[h]) +
                       c.c2 * r2[h] * (gbest[h] - p.position[h]);
    v[h] = std::clamp(raw, -v_max[h], v_max[h]);
  }
  return v;
}

Schedule velocity_update(const Particle& p, const Schedule& gbest, const PsoConfig& c, const Schedule& v_max,
                         Rng& rng) {
  Schedule r1{}, r2{};
  for (double& r : r1) r = rng.uniform_closed();
  for (double& r : r2) r = rng.uniform_closed();
  return velocity_update(p, gbest, c, v_max, r1, r2);
}

Schedule position_update(const Schedule& position, const Schedule& velocity, const Schedule& lower,
                         const Schedule& upper) {
  Schedule x{};
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    x[h] = std::clamp(position[h] + velocity[h], lower[h], upper[h]);
  }
  return x;
}

OptimizationResult optimize_pso(const DrProblem& problem, const PsoConfig& config, const SwarmObserver& observer) {
  config.validate();
  problem.validate();
  Rng rng(config.seed);
  const Schedule v_max = max_velocity(problem, config.v_max_fraction);

  std::vector<Particle> swarm(config.swarm_size);
  for (std::size_t i = 0; i < swarm.size(); ++i) {
    Particle& p = swarm[i];
    if (i == 0 && config.seed_with_predicted) {
      p.position = clamp_to_box(problem, problem.predicted.values());
    } else {
      for (std::size_t h = 0; h < kHoursPerDay; ++h) p.position[h] = rng.uniform(problem.lower[h], problem.upper[h]);
    }
    for (std::size_t h = 0; h < kHoursPerDay; ++h) p.velocity[h] = rng.uniform(-v_max[h], v_max[h]);
  }

  std::vector<ObjectiveBreakdown> pbest(swarm.size());
  for (std::size_t i = 0; i < swarm.size(); ++i) {
    pbest[i] = evaluate(problem, swarm[i].position);
    swarm[i].best_position = swarm[i].position;
    swarm[i].best_objective = pbest[i].objective;
  }
  std::size_t g = 0;
  for (std::size_t i = 1; i < swarm.size(); ++i) {
    if (pbest[i].objective < pbest[g].objective) g = i;
  }
  Schedule gbest = swarm[g].best_position;
  ObjectiveBreakdown gbest_eval = pbest[g];

  std::vector<TracePoint> trace;
  trace.reserve(config.iterations + 1);
  trace.push_back(trace_point(0, gbest_eval));
  if (observer) observer(SwarmSnapshot{0, swarm, &gbest, gbest_eval.objective});

  std::vector<ObjectiveBreakdown> current(swarm.size());
  for (std::size_t it = 1; it <= config.iterations; ++it) {
    // Move phase, all against the previous gbest.
    for (Particle& p : swarm) {
      Schedule v = velocity_update(p, gbest, config, v_max, rng);
      const Schedule x = position_update(p.position, v, problem.lower, problem.upper);
      for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        if (x[h] != p.position[h] + v[h]) v[h] = 0.0;  // clamped at a bound
      }
      p.position = x;
      p.velocity = v;
    }
    // Evaluation phase; independent per particle.
    for (std::size_t i = 0; i < swarm.size(); ++i) current[i] = evaluate(problem, swarm[i].position);
    // Single-writer update phase in particle order.
    for (std::size_t i = 0; i < swarm.size(); ++i) {
      if (current[i].objective < swarm[i].best_objective) {
        swarm[i].best_objective = current[i].objective;
        swarm[i].best_position = swarm[i].position;
        pbest[i] = current[i];
      }
    }
    for (std::size_t i = 0; i < swarm.size(); ++i) {
      if (pbest[i].objective < gbest_eval.objective) {
        gbest_eval = pbest[i];
        gbest = swarm[i].best_position;
      }
    }
    trace.push_back(trace_point(static_cast<int>(it), gbest_eval));
    if (observer) observer(SwarmSnapshot{static_cast<int>(it), swarm, &gbest, gbest_eval.objective});
  }

  OptimizationResult result = summarize(problem, gbest, "PSO", config.seed);
  result.trace = std::move(trace);
  result.evaluations = config.swarm_size * (config.iterations + 1);
  return result;
}

}  // namespace drpso
