#include <doctest.h>

#include <sstream>
#include <vector>

#include "drpso/error.hpp"
#include "drpso/forecaster.hpp"
#include "drpso/ingest.hpp"
#include "drpso/synth.hpp"

using namespace drpso;

TEST_CASE("same seed, same bytes") {
  SynthOptions o;
  o.days = 10;
  o.seed = 42;
  std::ostringstream a, b, c;
  write_dataset(a, generate_dataset(o));
  write_dataset(b, generate_dataset(o));
  CHECK(a.str() == b.str());
  o.seed = 43;
  write_dataset(c, generate_dataset(o));
  CHECK(a.str() != c.str());
}

TEST_CASE("generated series passes ingest and carries a temperature signal") {
  SynthOptions o;
  o.days = 30;
  o.seed = 5;
  std::ostringstream out;
  write_dataset(out, generate_dataset(o));
  std::istringstream in(out.str());
  const Dataset ds = parse_dataset(in);
  REQUIRE(ds.records.size() == 30 * 24);
  std::vector<double> temp, load;
  for (const auto& r : ds.records) {
    CHECK(r.price.has_value());
    CHECK(r.load_kwh > 0.0);
    temp.push_back(r.weather.temperature);
    load.push_back(r.load_kwh);
  }
  CHECK(pearson(temp, load) > 0.3);
  CHECK_NOTHROW((void)fit_normalizer(ds));

  o.days = 2;
  CHECK_THROWS_AS((void)generate_dataset(o), Error);
}

TEST_CASE("synthetic day has an evening price peak") {
  const DayInstance d = synthetic_day(2010);
  std::size_t argmax = 0;
  for (std::size_t h = 1; h < kHoursPerDay; ++h) {
    if (d.prices[h] > d.prices[argmax]) argmax = h;
  }
  CHECK(argmax >= 16);
  CHECK(argmax <= 20);
  CHECK(total(d.load) > 0.0);
}
