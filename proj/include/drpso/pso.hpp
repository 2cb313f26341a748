#pragma once

// Global-best particle swarm over the 24-hour schedule box.
//
//   v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x),  |v_h| <= v_max_h
//   x <- clamp(x + v, lower, upper)
//
// r1 and r2 are drawn per dimension. The swarm is synchronous: all particles
// move against the previous iteration's gbest, are evaluated, and then the
// personal and global bests are updated in particle order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "drpso/data_model.hpp"
#include "drpso/rng.hpp"

namespace drpso {

struct PsoConfig {
  std::size_t swarm_size = 50;
  std::size_t iterations = 100;
  double w = 1.0;
  double c1 = 2.0;
  double c2 = 2.0;
  double v_max_fraction = 0.10;  // of (upper - lower), per hour
  std::uint64_t seed = 0;
  bool seed_with_predicted = true;

  void validate() const;
};

struct Particle {
  Schedule position{};
  Schedule velocity{};
  Schedule best_position{};
  double best_objective = 0.0;
};

Schedule max_velocity(const DrProblem& problem, double v_max_fraction);

/// Deterministic core with explicit random factors, then the elementwise clamp.
Schedule velocity_update(const Particle& particle, const Schedule& gbest, const PsoConfig& config,
                         const Schedule& v_max, const Schedule& r1, const Schedule& r2);
/// Draws r1 then r2, uniform in [0, 1] per dimension.
Schedule velocity_update(const Particle& particle, const Schedule& gbest, const PsoConfig& config,
                         const Schedule& v_max, Rng& rng);

Schedule position_update(const Schedule& position, const Schedule& velocity, const Schedule& lower,
                         const Schedule& upper);

struct SwarmSnapshot {
  int iteration = 0;
  std::span<const Particle> particles;
  const Schedule* gbest = nullptr;
  double gbest_objective = 0.0;
};

/// Called after initialization (iteration 0) and after every iteration.
using SwarmObserver = std::function<void(const SwarmSnapshot&)>;

OptimizationResult optimize_pso(const DrProblem& problem, const PsoConfig& config,
                                const SwarmObserver& observer = {});

}  // namespace drpso
