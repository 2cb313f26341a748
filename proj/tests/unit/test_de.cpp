#include <doctest.h>

#include <vector>

#include "drpso/de.hpp"
#include "drpso/error.hpp"
#include "drpso/objective.hpp"
#include "drpso/oracle.hpp"
#include "support/oracles.hpp"
#include "support/problems.hpp"

using namespace drpso;
using drpso::testing::filled;
using drpso::testing::random_problem;

namespace {

Schedule two(double a, double b) {
  Schedule s{};
  s[0] = a;
  s[1] = b;
  return s;
}

}  // namespace

TEST_CASE("mutation examples") {
  const Schedule lo = filled(-100.0), hi = filled(100.0);
  CHECK(mutate(two(1, 1), two(2, 0), two(0, 0), 0.5, lo, hi) == two(2, 1));
  CHECK(mutate(filled(3.0), filled(8.0), filled(8.0), 0.7, lo, hi) == filled(3.0));
  CHECK(mutate(filled(9.0), filled(10.0), filled(0.0), 0.8, lo, filled(10.0)) == filled(10.0));

  const std::vector<Schedule> pop{filled(1.0), filled(2.0), filled(3.0), filled(4.0)};
  CHECK(mutate_members(pop, 0, 1, 2, 0.5, lo, hi) == filled(0.5));
  for (auto [a, b, c] : {std::array<std::size_t, 3>{0, 0, 1}, {0, 1, 1}, {2, 1, 2}, {0, 1, 4}}) {
    try {
      (void)mutate_members(pop, a, b, c, 0.5, lo, hi);
      FAIL("expected NonDistinctParents");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonDistinctParents);
    }
  }

  Rng rng(12);
  for (int t = 0; t < 500; ++t) {
    const auto [a, b, c] = pick_parents(2, 4, rng);
    CHECK(a != 2);
    CHECK(b != 2);
    CHECK(c != 2);
    CHECK(a != b);
    CHECK(b != c);
    CHECK(a != c);
  }
}

TEST_CASE("crossover examples") {
  Rng rng(3);
  Schedule x{}, y{};
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    x[h] = static_cast<double>(h);
    y[h] = 100.0 + static_cast<double>(h);
  }
  for (int t = 0; t < 50; ++t) CHECK(crossover(x, y, 1.0, rng) == y);
  for (int t = 0; t < 50; ++t) {
    const Schedule z = crossover(x, y, 0.0, rng);
    int from_y = 0;
    for (std::size_t h = 0; h < kHoursPerDay; ++h) from_y += z[h] == y[h];
    CHECK(from_y == 1);
  }
  CHECK(crossover(x, x, 0.4, rng) == x);

  const Schedule r = filled(0.5);
  const Schedule z = crossover(x, y, 0.0, 7, r);
  CHECK(z[7] == y[7]);
  CHECK(z[6] == x[6]);
  CHECK(crossover(x, y, 0.5, 7, r) == y);  // r_j <= pcr is inclusive
}

TEST_CASE("degenerate box and seeded baseline") {
  ProblemOptions pin;
  pin.gamma_lo = pin.gamma_hi = 1.0;
  DeConfig c;
  c.population_size = 8;
  c.iterations = 10;
  const DrProblem fixed = random_problem(5, pin);
  const OptimizationResult r = optimize_de(fixed, c);
  CHECK(r.best_schedule == fixed.predicted);

  for (std::uint64_t s = 0; s < 10; ++s) {
    const DrProblem p = random_problem(200 + s);
    c.population_size = 20;
    c.iterations = 30;
    c.seed = s;
    const OptimizationResult d = optimize_de(p, c);
    CHECK(d.objective <= evaluate(p, p.predicted).objective);
    CHECK(d.evaluations == 20 * 31);
    for (std::size_t i = 1; i < d.trace.size(); ++i) CHECK(d.trace[i].best_objective <= d.trace[i - 1].best_objective);
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
      CHECK(d.best_schedule[h] >= p.lower[h]);
      CHECK(d.best_schedule[h] <= p.upper[h]);
    }
  }
}

TEST_CASE("three free hours land within 2% of the grid optimum") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    ReducedProblem rp{random_problem(600 + s), {0, 9, 23}, 101};
    const GridSearchResult best = grid_search(rp);
    DeConfig c;
    c.seed = derive_seed(s, "de");
    CHECK(relative_gap(optimize_de(rp.pinned_problem(), c).objective, best.best_objective) <= 0.02);
  }
}

TEST_CASE("config validation and determinism") {
  DeConfig c;
  c.population_size = 3;
  CHECK_THROWS_AS(c.validate(), Error);
  c = DeConfig{};
  c.beta_min = 0.1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = DeConfig{};
  c.crossover_probability = 1.5;
  CHECK_THROWS_AS(c.validate(), Error);

  c = DeConfig{};
  c.population_size = 10;
  c.iterations = 15;
  c.seed = 8;
  const DrProblem p = random_problem(44);
  const OptimizationResult a = optimize_de(p, c);
  const OptimizationResult b = optimize_de(p, c);
  CHECK(a.trace == b.trace);
  CHECK(a.best_schedule == b.best_schedule);
}
