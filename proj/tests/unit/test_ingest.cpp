#include <doctest.h>

#include <sstream>

#include "drpso/error.hpp"
#include "drpso/ingest.hpp"
#include "drpso/rng.hpp"
#include "support/oracles.hpp"

using namespace drpso;
using drpso::testing::enumerate_windows;
using drpso::testing::make_csv;
using drpso::testing::make_dataset;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidConfig;
}

double row_load(std::size_t i) { return 100.0 + static_cast<double>(i); }

}  // namespace

TEST_CASE("well-formed file loads every row") {
  const Dataset ds = make_dataset(48, row_load);
  REQUIRE(ds.records.size() == 48);
  CHECK(ds.records.front().load_kwh == 100.0);
  CHECK(ds.records.back().load_kwh == 147.0);
  CHECK(ds.records[5].price.has_value());
  CHECK(ds.training_count() == 48);
}

TEST_CASE("rows are sorted by timestamp and the price column is optional") {
  std::istringstream in(
      "load_kwh,timestamp,wind_speed,temperature,heat_index,cold_index,dew_point\n"
      "2,2010-01-01T01:00,1,1,1,1,1\n"
      "1,2010-01-01T00:00,1,1,1,1,1\n");
  const Dataset ds = parse_dataset(in);
  REQUIRE(ds.records.size() == 2);
  CHECK(ds.records[0].load_kwh == 1.0);
  CHECK_FALSE(ds.records[0].price.has_value());
}

TEST_CASE("a two-hour gap is a cadence error naming the offending timestamp") {
  std::string csv = make_csv(10, row_load);
  const auto pos = csv.find("2010-01-01T05:00");
  const auto end = csv.find('\n', pos);
  csv.erase(pos, end - pos + 1);
  std::istringstream in(csv);
  try {
    (void)parse_dataset(in);
    FAIL("expected NonHourlyCadence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHourlyCadence);
    CHECK(std::string(e.what()).find("2010-01-01T06:00") != std::string::npos);
  }
  std::istringstream again(csv);
  LoadOptions lenient;
  lenient.allow_gaps = true;
  CHECK(parse_dataset(again, lenient).records.size() == 9);
}

TEST_CASE("non-numeric load reports the line number") {
  std::string csv = make_csv(5, row_load);
  const auto pos = csv.find(",103,");
  REQUIRE(pos != std::string::npos);
  csv.replace(pos, 5, ",abc,");
  std::istringstream in(csv);
  try {
    (void)parse_dataset(in);
    FAIL("expected UnparseableRow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnparseableRow);
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
}

TEST_CASE("missing columns and missing files") {
  std::istringstream in("timestamp,wind_speed,temperature\n2010-01-01T00:00,1,2\n");
  CHECK(code_of([&] { (void)parse_dataset(in); }) == ErrorCode::MissingColumn);
  CHECK(code_of([] { (void)load_dataset("/nonexistent/data.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("custom column mapping") {
  std::istringstream in("ts,ws,t,hi,ci,dp,kwh\n2010-01-01T00:00,1,2,3,4,5,6\n");
  LoadOptions o;
  o.schema = CsvSchema{"ts", "ws", "t", "hi", "ci", "dp", "kwh", "price"};
  const Dataset ds = parse_dataset(in, o);
  REQUIRE(ds.records.size() == 1);
  CHECK(ds.records[0].weather.dew_point == 5.0);
  CHECK(ds.records[0].load_kwh == 6.0);
}

TEST_CASE("normalizer ranges") {
  Dataset ds = make_dataset(2, [](std::size_t i) { return i == 0 ? 0.0 : 10.0; });
  NormalizationStats s = fit_normalizer(ds);
  CHECK(s.load().min == 0.0);
  CHECK(s.load().max == 10.0);

  // Loads cannot be negative, so the symmetric range uses temperature.
  ds = make_dataset(3, [](std::size_t i) { return 5.0 + 5.0 * static_cast<double>(i); });
  for (auto& r : ds.records) r.weather.temperature = r.load_kwh - 10.0;
  s = fit_normalizer(ds);
  CHECK(s.ranges[1].min == -5.0);
  CHECK(s.ranges[1].max == 5.0);

  ds = make_dataset(4, [](std::size_t) { return 7.0; });
  try {
    (void)fit_normalizer(ds);
    FAIL("expected DegenerateFeature");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateFeature);
    CHECK(std::string(e.what()).find("load_kwh") != std::string::npos);
  }
}

TEST_CASE("normalizer ignores test rows") {
  Dataset ds = make_dataset(72, row_load);
  ds = split_at(std::move(ds), *parse_timestamp("2010-01-03T00:00"));
  CHECK(ds.training_count() == 48);
  const NormalizationStats before = fit_normalizer(ds);
  Rng rng(5);
  for (auto& r : ds.records) {
    if (ds.is_training(r)) continue;
    r.load_kwh = rng.uniform(0.0, 1e6);
    r.weather.temperature = rng.uniform(-100.0, 100.0);
  }
  CHECK(fit_normalizer(ds) == before);
  CHECK(normalize(before.load().min, before.load()) == -1.0);
  CHECK(normalize(before.load().max, before.load()) == 1.0);
}

TEST_CASE("normalize endpoints, midpoint, and inverse") {
  const FeatureRange r{"x", -3.0, 17.0};
  CHECK(normalize(-3.0, r) == -1.0);
  CHECK(normalize(17.0, r) == 1.0);
  CHECK(normalize(7.0, r) == 0.0);
  CHECK(normalize(37.0, r) == 3.0);  // not clamped
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-1e4, 1e4);
    CHECK(denormalize(normalize(x, r), r) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("window counts follow hand enumeration") {
  const Dataset d48 = make_dataset(48, row_load);
  const auto w = build_windows(d48, 24);
  REQUIRE(w.size() == enumerate_windows(48, 24));
  REQUIRE(w.size() == 1);
  CHECK(w[0].target == d48.records[47].load_kwh);
  CHECK(w[0].features.size() == 5 + 24);
  CHECK(w[0].features[5] == d48.records[0].load_kwh);   // oldest lag
  CHECK(w[0].features[28] == d48.records[23].load_kwh); // most recent lag
  CHECK(w[0].target_time - d48.records[23].timestamp == std::chrono::hours{24});
  CHECK(w[0].features[1] == d48.records[47].weather.temperature);

  CHECK(enumerate_windows(47, 24) == 0);
  CHECK(code_of([] { (void)build_windows(make_dataset(47, row_load), 24); }) == ErrorCode::InsufficientData);

  CHECK(enumerate_windows(26, 1) == 2);
  CHECK(build_windows(make_dataset(26, row_load), 1).size() == 2);

  for (std::size_t rows : {30u, 55u, 100u}) {
    for (std::size_t lag : {1u, 3u, 24u}) {
      const std::size_t expected = enumerate_windows(rows, lag);
      if (expected == 0) continue;
      CHECK(build_windows(make_dataset(rows, row_load), lag).size() == expected);
    }
  }
}

TEST_CASE("windows with a test target are test windows; gaps drop windows") {
  Dataset ds = split_at(make_dataset(72, row_load), *parse_timestamp("2010-01-03T00:00"));
  const auto w = build_windows(ds, 24);
  for (const auto& win : w) CHECK(win.is_test == (win.target_time >= ds.split_boundary));
  CHECK(std::count_if(w.begin(), w.end(), [](const auto& x) { return x.is_test; }) == 24);

  std::string csv = make_csv(60, row_load);
  const auto pos = csv.find("2010-01-02T10:00");
  csv.erase(pos, csv.find('\n', pos) - pos + 1);
  std::istringstream in(csv);
  LoadOptions lenient;
  lenient.allow_gaps = true;
  const Dataset gappy = parse_dataset(in, lenient);
  for (const auto& win : build_windows(gappy, 2)) {
    const auto first = win.target_time - std::chrono::hours{25};
    const auto gap = *parse_timestamp("2010-01-02T10:00");
    CHECK_FALSE((first <= gap && gap <= win.target_time));
  }
}

TEST_CASE("chronological split lands on a day boundary") {
  const Dataset ds = split_chronological(make_dataset(240, row_load), 0.85);
  const auto b = ds.split_boundary;
  CHECK(b == Timestamp{day_of(b)});
  // Row 204 is 12:00 on day 9, which rounds up to the next midnight.
  CHECK(ds.training_count() == 9 * 24);
}

TEST_CASE("dataset text round trip") {
  const Dataset ds = make_dataset(30, [](std::size_t i) { return 0.1 * static_cast<double>(i) + 1e-7; });
  std::ostringstream out;
  write_dataset(out, ds);
  std::istringstream in(out.str());
  const Dataset back = parse_dataset(in);
  REQUIRE(back.records.size() == ds.records.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    CHECK(back.records[i].load_kwh == ds.records[i].load_kwh);
    CHECK(back.records[i].price == ds.records[i].price);
    CHECK(back.records[i].timestamp == ds.records[i].timestamp);
  }
}
