#include <doctest.h>

#include <numeric>

#include "drpso/data_model.hpp"
#include "drpso/error.hpp"
#include "drpso/rng.hpp"
#include "support/oracles.hpp"

using namespace drpso;
using drpso::testing::filled;

namespace {

Schedule one_to_24() {
  Schedule s{};
  std::iota(s.begin(), s.end(), 1.0);
  return s;
}

}  // namespace

TEST_CASE("peak") {
  CHECK(peak(HourlyProfile(ProfileKind::Load, filled(5.0))) == 5.0);
  CHECK(peak(HourlyProfile(ProfileKind::Load, one_to_24())) == 24.0);
  Schedule spike{};
  spike[13] = 100.0;
  CHECK(peak(HourlyProfile(ProfileKind::Load, spike)) == 100.0);
}

TEST_CASE("total") {
  CHECK(total(HourlyProfile(ProfileKind::Load, filled(1.0))) == 24.0);
  CHECK(total(HourlyProfile(ProfileKind::Load, filled(0.0))) == 0.0);
  CHECK(total(HourlyProfile(ProfileKind::Load, one_to_24())) == 300.0);
}

TEST_CASE("profiles reject negative, non-finite and wrongly sized input") {
  Schedule bad = filled(1.0);
  bad[3] = -0.5;
  CHECK_THROWS_AS(HourlyProfile(ProfileKind::Load, bad), Error);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HourlyProfile(ProfileKind::Price, bad), Error);
  std::vector<double> short_day(23, 1.0);
  try {
    (void)HourlyProfile::from_span(ProfileKind::Load, short_day);
    FAIL("expected InvalidProfile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidProfile);
  }
}

TEST_CASE("peak and total scale linearly; peak never exceeds total") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Schedule s{};
    for (double& v : s) v = rng.uniform(0.0, 1000.0);
    const HourlyProfile p(ProfileKind::Load, s);
    const double k = rng.uniform(0.0, 5.0);
    const HourlyProfile q = p.scaled(k);
    CHECK(total(q) == doctest::Approx(k * total(p)).epsilon(1e-12));
    CHECK(peak(q) == doctest::Approx(k * peak(p)).epsilon(1e-12));
    CHECK(peak(p) <= total(p));
  }
}

TEST_CASE("timestamps parse and format on hour boundaries") {
  const auto ts = parse_timestamp("2010-04-07T13:00");
  REQUIRE(ts);
  CHECK(format_timestamp(*ts) == "2010-04-07T13:00");
  CHECK(parse_timestamp("2010-04-07 13:00:00") == ts);
  CHECK(parse_timestamp("2010-04-07T13") == ts);
  CHECK_FALSE(parse_timestamp("2010-04-07T13:30"));
  CHECK_FALSE(parse_timestamp("2010-02-30T01:00"));
  CHECK_FALSE(parse_timestamp("2010-04-07T24:00"));
  CHECK_FALSE(parse_timestamp("yesterday"));
  const auto d = parse_date("2010-12-28");
  REQUIRE(d);
  CHECK(format_date(*d) == "2010-12-28");
  CHECK(day_of(*ts) == *parse_date("2010-04-07"));
}

TEST_CASE("problem validation") {
  DrProblem p;
  p.predicted = HourlyProfile(ProfileKind::Load, filled(10.0));
  p.prices = HourlyProfile(ProfileKind::Price, filled(2.0));
  p.lower = filled(5.0);
  p.upper = filled(15.0);
  CHECK_NOTHROW(p.validate());
  p.lower[4] = 20.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.lower[4] = 5.0;
  p.alpha = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.alpha = 100.0;
  p.w1 = -0.1;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("derived seeds are stable and label-sensitive") {
  CHECK(derive_seed(7, "sweep", 0) == derive_seed(7, "sweep", 0));
  CHECK(derive_seed(7, "sweep", 0) != derive_seed(7, "sweep", 1));
  CHECK(derive_seed(7, "sweep", 0) != derive_seed(7, "pso", 0));
  CHECK(derive_seed(7, "sweep", 0) != derive_seed(8, "sweep", 0));
}

TEST_CASE("rng index is in range and covers every value") {
  Rng rng(3);
  std::array<int, 24> hits{};
  for (int i = 0; i < 5000; ++i) {
    const auto k = rng.index(24);
    REQUIRE(k < 24);
    ++hits[k];
  }
  for (int h : hits) CHECK(h > 0);
}
