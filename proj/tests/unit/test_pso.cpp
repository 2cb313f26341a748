#include <doctest.h>

#include <limits>

#include "drpso/error.hpp"
#include "drpso/objective.hpp"
#include "drpso/oracle.hpp"
#include "drpso/pso.hpp"
#include "support/oracles.hpp"
#include "support/problems.hpp"

using namespace drpso;
using drpso::testing::filled;
using drpso::testing::random_problem;

TEST_CASE("velocity update examples") {
  PsoConfig c;
  Particle p;
  p.position = filled(3.0);
  p.best_position = filled(5.0);
  p.velocity = filled(0.25);
  const Schedule big = filled(100.0);
  const Schedule ones = filled(1.0);

  c.c1 = c.c2 = 0.0;
  CHECK(velocity_update(p, filled(-4.0), c, big, ones, ones) == p.velocity);

  c = PsoConfig{};
  p.best_position = p.position;
  CHECK(velocity_update(p, p.position, c, big, ones, ones) == p.velocity);

  // Raw update 2 against a 0.1 clamp.
  Particle q;
  c.c1 = 2.0;
  c.c2 = 2.0;
  Schedule r1 = filled(0.5);
  const Schedule v = velocity_update(q, ones, c, filled(0.1), r1, ones);
  for (double x : v) CHECK(x == 0.1);
  c.v_max_fraction = 0.1;
  DrProblem unit;
  unit.predicted = HourlyProfile(ProfileKind::Load, filled(0.5));
  unit.upper = ones;
  CHECK(max_velocity(unit, c.v_max_fraction) == filled(0.1));
  c.v_max_fraction = 10.0;
  CHECK(velocity_update(q, ones, c, max_velocity(unit, c.v_max_fraction), r1, ones) == filled(2.0));

  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    for (double x : velocity_update(p, filled(50.0), PsoConfig{}, filled(0.3), rng)) {
      CHECK(std::abs(x) <= 0.3);
    }
  }
}

TEST_CASE("position update examples") {
  const Schedule lo = filled(-100.0), hi = filled(100.0);
  CHECK(position_update(filled(7.0), Schedule{}, lo, hi) == filled(7.0));
  CHECK(position_update(filled(9.0), filled(5.0), lo, filled(10.0)) == filled(10.0));
  Schedule x = filled(0.0), v = filled(0.0);
  x[0] = 1.0;
  x[1] = 2.0;
  v[0] = 0.5;
  v[1] = -0.5;
  const Schedule y = position_update(x, v, lo, hi);
  CHECK(y[0] == 1.5);
  CHECK(y[1] == 1.5);
}

TEST_CASE("degenerate box returns the forecast") {
  ProblemOptions pin;
  pin.gamma_lo = pin.gamma_hi = 1.0;
  const DrProblem p = random_problem(3, pin);
  PsoConfig c;
  c.swarm_size = 10;
  c.iterations = 20;
  c.seed = 1;
  const OptimizationResult r = optimize_pso(p, c);
  CHECK(r.best_schedule == p.predicted);
  for (const auto& t : r.trace) CHECK(t.best_objective == r.trace.front().best_objective);
}

TEST_CASE("seeded runs are never worse than the forecast") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    DrProblem p = random_problem(100 + s);
    PsoConfig c;
    c.swarm_size = 20;
    c.iterations = 30;
    c.seed = s;
    const OptimizationResult r = optimize_pso(p, c);
    CHECK(r.objective <= evaluate(p, p.predicted).objective);
    CHECK(r.evaluations == 20 * 31);
    CHECK(r.trace.size() == 31);

    p.w1 = 1.0;
    p.w2 = 0.0;
    CHECK(optimize_pso(p, c).cost <= energy_cost(p.predicted, p.prices));
  }
}

TEST_CASE("three free hours land within 1% of the grid optimum") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    ReducedProblem rp{random_problem(500 + s), {2, 11, 19}, 101};
    const GridSearchResult best = grid_search(rp);
    PsoConfig c;
    c.seed = derive_seed(s, "pso");
    const OptimizationResult r = optimize_pso(rp.pinned_problem(), c);
    CHECK(relative_gap(r.objective, best.best_objective) <= 0.01);
  }
}

TEST_CASE("swarm invariants hold at every iteration") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    ProblemOptions o;
    if (s % 2) o.peak_cap = 90.0;
    const DrProblem p = random_problem(900 + s, o);
    PsoConfig c;
    c.swarm_size = 15;
    c.iterations = 40;
    c.seed = s;
    const Schedule v_max = max_velocity(p, c.v_max_fraction);
    double last = std::numeric_limits<double>::infinity();
    int calls = 0;
    const OptimizationResult r = optimize_pso(p, c, [&](const SwarmSnapshot& snap) {
      CHECK(snap.iteration == calls++);
      CHECK(snap.gbest_objective <= last);
      last = snap.gbest_objective;
      for (const Particle& q : snap.particles) {
        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
          CHECK(q.position[h] >= p.lower[h]);
          CHECK(q.position[h] <= p.upper[h]);
          CHECK(std::abs(q.velocity[h]) <= v_max[h]);
        }
        CHECK(q.best_objective >= snap.gbest_objective);
      }
    });
    CHECK(calls == 41);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].best_objective <= r.trace[i - 1].best_objective);
    CHECK(r.trace.back().best_objective == r.objective);
    CHECK(r.violation_flagged() == (r.violation > 0.0));
  }
}

TEST_CASE("identical seeds give identical runs") {
  DrProblem p = random_problem(77);
  p.w1 = 1.0;
  p.w2 = 0.0;
  PsoConfig c;
  c.swarm_size = 12;
  c.iterations = 25;
  c.seed = 99;
  const OptimizationResult a = optimize_pso(p, c);
  const OptimizationResult b = optimize_pso(p, c);
  CHECK(a.trace == b.trace);
  CHECK(a.best_schedule == b.best_schedule);
  c.seed = 100;
  CHECK(optimize_pso(p, c).trace != a.trace);

  c.swarm_size = 1;
  CHECK_THROWS_AS((void)optimize_pso(p, c), Error);
}
