// drpso: synthetic data, load forecasting and demand-response scheduling.
//
// Exit codes: 0 ok, 1 runtime error, 2 usage error.

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "drpso/de.hpp"
#include "drpso/error.hpp"
#include "drpso/forecaster.hpp"
#include "drpso/ingest.hpp"
#include "drpso/objective.hpp"
#include "drpso/oracle.hpp"
#include "drpso/pso.hpp"
#include "drpso/report.hpp"
#include "drpso/rng.hpp"
#include "drpso/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace drpso;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A flag that can also be supplied by the --config file. Command-line values
// win over the file; the resolved value goes into the manifest.
struct Param {
  std::string key;
  CLI::Option* option = nullptr;
  std::function<void(const json&)> load;
  std::function<json()> dump;
};

class Params {
 public:
  template <typename T>
  CLI::Option* add(CLI::App* app, const std::string& flag, const std::string& key, T& var, const std::string& help) {
    CLI::Option* o = app->add_option(flag, var, help)->capture_default_str();
    params_.push_back({key, o, [&var](const json& j) { var = j.get<T>(); }, [&var] { return json(var); }});
    return o;
  }

  // 0 means "unset"; null in a config file maps to 0.
  CLI::Option* add_optional(CLI::App* app, const std::string& flag, const std::string& key, double& var,
                            const std::string& help) {
    CLI::Option* o = app->add_option(flag, var, help)->capture_default_str();
    params_.push_back({key, o, [&var](const json& j) { var = j.is_null() ? 0.0 : j.get<double>(); },
                       [&var] { return var > 0.0 ? json(var) : json(nullptr); }});
    return o;
  }

  void apply(const json& config) const {
    for (const auto& [key, value] : config.items()) {
      auto it = std::find_if(params_.begin(), params_.end(), [&](const Param& p) { return p.key == key; });
      if (it == params_.end()) throw UsageError(fmt::format("config: unknown key '{}'", key));
      if (it->option->count() > 0) continue;
      try {
        it->load(value);
      } catch (const json::exception& e) {
        throw UsageError(fmt::format("config: bad value for '{}': {}", key, e.what()));
      }
    }
  }

  json resolved() const {
    json j = json::object();
    for (const auto& p : params_) j[p.key] = p.dump();
    return j;
  }

 private:
  std::vector<Param> params_;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string out = "out";
  std::string config;
};

// ---------------------------------------------------------------- options

struct SynthArgs {
  int days = 120;
  std::string start = "2010-01-01";
  std::string file = "synthetic.csv";
};

struct TrainArgs {
  std::string data;
  double split = 0.85;
  std::size_t lag = 24;
  std::vector<std::size_t> hidden{25, 20, 15};
  std::size_t epochs = 1000;
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t batch = 32;
  bool allow_gaps = false;
};

struct InputArgs {
  std::string predicted;
  std::string prices;
  std::string data;
  std::string model;
  std::string day;
};

struct ProblemArgs {
  double w1 = 0.4;
  double w2 = 0.6;
  double alpha = 100.0;
  double gamma_lo = 0.5;
  double gamma_hi = 1.5;
  double peak_cap = 0.0;
  double peak_cap_frac = 0.0;
  bool symmetric = false;
};

struct OptimizerArgs {
  std::string algorithm = "pso";
  std::size_t swarm = 50;
  std::size_t population = 50;
  std::size_t iterations = 100;
  double inertia = 1.0;
  double c1 = 2.0;
  double c2 = 2.0;
  double vmax_frac = 0.10;
  double pcr = 0.7;
  double beta_min = 0.2;
  double beta_max = 0.8;
  bool seed_forecast = true;
};

struct VerifyArgs {
  std::vector<std::size_t> free_hours;
  std::size_t resolution = 101;
  double pso_tol = 0.01;
  double de_tol = 0.02;
};

void add_inputs(CLI::App* app, Params& p, InputArgs& a) {
  p.add(app, "--predicted", "predicted", a.predicted, "Predicted load CSV (hour,load_kwh)");
  p.add(app, "--prices", "prices", a.prices, "Price CSV (hour,price_c_per_kwh)");
  p.add(app, "--data", "data", a.data, "Dataset CSV; source of prices and model inputs");
  p.add(app, "--model", "model", a.model, "Trained model file; predicts the day from --data");
  p.add(app, "--day", "day", a.day, "Target day YYYY-MM-DD (default: last day in --data)");
}

void add_problem(CLI::App* app, Params& p, ProblemArgs& a) {
  p.add(app, "--w1", "w1", a.w1, "Cost weight")->check(CLI::NonNegativeNumber);
  p.add(app, "--w2", "w2", a.w2, "Load-shift weight")->check(CLI::NonNegativeNumber);
  p.add(app, "--alpha", "alpha", a.alpha, "Violation coefficient")->check(CLI::NonNegativeNumber);
  p.add(app, "--gamma-lo", "gamma_lo", a.gamma_lo, "Lower bound as a fraction of the forecast");
  p.add(app, "--gamma-hi", "gamma_hi", a.gamma_hi, "Upper bound as a fraction of the forecast");
  p.add_optional(app, "--peak-cap", "peak_cap", a.peak_cap, "Hourly cap in kWh (0: none)");
  p.add_optional(app, "--peak-cap-frac", "peak_cap_frac", a.peak_cap_frac,
                 "Hourly cap as a fraction of the forecast peak (0: none)");
  p.add(app, "--symmetric-violation", "symmetric_violation", a.symmetric,
        "Penalize under-consumption as well");
}

void add_optimizer(CLI::App* app, Params& p, OptimizerArgs& a, bool with_algorithm) {
  if (with_algorithm) {
    p.add(app, "--algorithm", "algorithm", a.algorithm, "pso or de")->check(CLI::IsMember({"pso", "de"}));
  }
  p.add(app, "--swarm", "swarm_size", a.swarm, "PSO swarm size")->check(CLI::Range(2, 100000));
  p.add(app, "--population", "population_size", a.population, "DE population size")->check(CLI::Range(4, 100000));
  p.add(app, "--iterations", "iterations", a.iterations, "Iterations / generations")->check(CLI::Range(1, 1000000));
  p.add(app, "--inertia", "w", a.inertia, "PSO inertia weight");
  p.add(app, "--c1", "c1", a.c1, "PSO cognitive factor");
  p.add(app, "--c2", "c2", a.c2, "PSO social factor");
  p.add(app, "--vmax-frac", "v_max_fraction", a.vmax_frac, "PSO velocity clamp as a fraction of the box");
  p.add(app, "--pcr", "crossover_probability", a.pcr, "DE crossover probability")->check(CLI::Range(0.0, 1.0));
  p.add(app, "--beta-min", "beta_min", a.beta_min, "DE scale factor lower bound");
  p.add(app, "--beta-max", "beta_max", a.beta_max, "DE scale factor upper bound");
  p.add(app, "--seed-forecast", "seed_with_predicted", a.seed_forecast, "Start one member at the forecast");
}

// ---------------------------------------------------------------- helpers

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open '{}'", path));
  return in;
}

class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::IoError, fmt::format("cannot create '{}': {}", dir_.string(), ec.message()));
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir_ / name;
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write '{}'", path.string()));
    body(out);
    if (!out) throw Error(ErrorCode::IoError, fmt::format("write failed for '{}'", path.string()));
    files_.push_back(name);
  }

  void text(const std::string& name, const std::string& content) {
    write(name, [&](std::ostream& o) { o << content; });
  }

  const fs::path& dir() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string utc_now() { return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr))); }

Date parse_day(const std::string& text) {
  const auto d = parse_date(text);
  if (!d) throw UsageError(fmt::format("bad --day '{}', expected YYYY-MM-DD", text));
  return *d;
}

struct DayInputs {
  HourlyProfile predicted;
  HourlyProfile prices;
  std::string day;  // empty when both came from CSV files
};

DayInputs resolve_inputs(const InputArgs& a) {
  DayInputs out;
  std::optional<Dataset> data;
  std::optional<Date> day;
  if (!a.data.empty()) {
    LoadOptions lenient;
    lenient.allow_gaps = true;
    data = load_dataset(a.data, lenient);
    if (data->records.empty()) throw Error(ErrorCode::InsufficientData, fmt::format("'{}' has no rows", a.data));
    day = a.day.empty() ? day_of(data->records.back().timestamp) : parse_day(a.day);
    out.day = format_date(*day);
  } else if (!a.day.empty()) {
    throw UsageError("--day needs --data");
  }

  if (!a.predicted.empty()) {
    auto in = open_in(a.predicted);
    out.predicted = read_profile_csv(in, ProfileKind::Load, a.predicted);
  } else if (!a.model.empty()) {
    if (!data) throw UsageError("--model needs --data");
    out.predicted = predict_day(load_model(a.model), *data, *day);
  } else {
    throw UsageError("need --predicted, or --model with --data");
  }

  if (!a.prices.empty()) {
    auto in = open_in(a.prices);
    out.prices = read_profile_csv(in, ProfileKind::Price, a.prices);
  } else if (data) {
    out.prices = day_prices(*data, *day);
  } else {
    throw UsageError("need --prices, or --data with a price column");
  }
  return out;
}

ProblemOptions problem_options(const ProblemArgs& a, const HourlyProfile& predicted) {
  if (a.peak_cap > 0.0 && a.peak_cap_frac > 0.0) throw UsageError("give --peak-cap or --peak-cap-frac, not both");
  ProblemOptions o;
  o.gamma_lo = a.gamma_lo;
  o.gamma_hi = a.gamma_hi;
  o.alpha = a.alpha;
  o.violation_mode = a.symmetric ? ViolationMode::Symmetric : ViolationMode::OneSided;
  if (a.peak_cap > 0.0) o.peak_cap = a.peak_cap;
  if (a.peak_cap_frac > 0.0) o.peak_cap = a.peak_cap_frac * peak(predicted);
  return o;
}

PsoConfig pso_config(const OptimizerArgs& a, std::uint64_t seed) {
  PsoConfig c;
  c.swarm_size = a.swarm;
  c.iterations = a.iterations;
  c.w = a.inertia;
  c.c1 = a.c1;
  c.c2 = a.c2;
  c.v_max_fraction = a.vmax_frac;
  c.seed = seed;
  c.seed_with_predicted = a.seed_forecast;
  c.validate();
  return c;
}

DeConfig de_config(const OptimizerArgs& a, std::uint64_t seed) {
  DeConfig c;
  c.population_size = a.population;
  c.iterations = a.iterations;
  c.crossover_probability = a.pcr;
  c.beta_min = a.beta_min;
  c.beta_max = a.beta_max;
  c.seed = seed;
  c.seed_with_predicted = a.seed_forecast;
  c.validate();
  return c;
}

void write_inputs(Outputs& out, const DayInputs& in) {
  out.write("predicted.csv", [&](std::ostream& o) { write_profile_csv(o, in.predicted, "load_kwh"); });
  out.write("prices.csv", [&](std::ostream& o) { write_profile_csv(o, in.prices, "price_c_per_kwh"); });
}

// ---------------------------------------------------------------- commands

json run_synth(const SynthArgs& a, const Globals& g, Outputs& out) {
  SynthOptions o;
  o.days = a.days;
  o.seed = g.seed;
  const auto start = parse_date(a.start);
  if (!start) throw UsageError(fmt::format("bad --start '{}'", a.start));
  o.start = *start;
  const Dataset ds = generate_dataset(o);
  out.write(a.file, [&](std::ostream& s) { write_dataset(s, ds); });
  std::cout << fmt::format("wrote {} rows to {}\n", ds.records.size(), (out.dir() / a.file).string());
  return json{{"rows", ds.records.size()}};
}

json run_train(const TrainArgs& a, const Globals& g, Outputs& out) {
  if (a.data.empty()) throw UsageError("train needs --data");
  LoadOptions lo;
  lo.allow_gaps = a.allow_gaps;
  const Dataset ds = split_chronological(load_dataset(a.data, lo), a.split);

  std::vector<std::size_t> sizes{WeatherRecord::kFeatureCount + a.lag};
  sizes.insert(sizes.end(), a.hidden.begin(), a.hidden.end());
  sizes.push_back(1);
  const std::uint64_t init_seed = derive_seed(g.seed, "init");
  const std::uint64_t train_seed = derive_seed(g.seed, "train");
  MlpModel model = init_model(sizes, init_seed);
  model.lag = a.lag;
  model.norm_stats = fit_normalizer(ds);

  TrainConfig cfg;
  cfg.epochs = a.epochs;
  cfg.learning_rate = a.learning_rate;
  cfg.momentum = a.momentum;
  cfg.batch_size = a.batch;
  cfg.seed = train_seed;
  const TrainOutcome result = train(model, build_windows(ds, a.lag), cfg);

  out.write("model.txt", [&](std::ostream& s) { write_model(s, result.model); });
  out.text("fit.json", dump_json(to_json(result.report)));
  out.write("epochs.csv", [&](std::ostream& s) { write_epoch_csv(s, result.report.epoch_train_mse); });

  const FitReport& r = result.report;
  auto opt = [](const std::optional<double>& v, int digits) {
    return v ? fmt::format("{:.{}f}", *v, digits) : std::string("n/a");
  };
  std::cout << fmt::format("train windows {}  test windows {}\n", r.train_windows, r.test_windows);
  std::cout << fmt::format("train MSE {:.6f}  r {}\n", r.train_mse, opt(r.train_correlation, 4));
  std::cout << fmt::format("test  MSE {}  r {}\n", opt(r.test_mse, 6), opt(r.test_correlation, 4));
  return json{{"init_seed", init_seed}, {"train_seed", train_seed}};
}

json run_predict(const InputArgs& a, Outputs& out) {
  if (a.model.empty() || a.data.empty()) throw UsageError("predict needs --model and --data");
  LoadOptions lenient;
  lenient.allow_gaps = true;
  const Dataset ds = load_dataset(a.data, lenient);
  if (ds.records.empty()) throw Error(ErrorCode::InsufficientData, fmt::format("'{}' has no rows", a.data));
  const Date day = a.day.empty() ? day_of(ds.records.back().timestamp) : parse_day(a.day);
  const HourlyProfile predicted = predict_day(load_model(a.model), ds, day);
  out.write("predicted.csv", [&](std::ostream& s) { write_profile_csv(s, predicted, "load_kwh"); });

  json report{{"day", format_date(day)},
              {"predicted_kwh", std::vector<double>(predicted.values().begin(), predicted.values().end())}};
  try {
    const HourlyProfile real = day_loads(ds, day);
    const Metrics m = metrics(predicted.values(), real.values());
    report["mse_kwh2"] = m.mse;
    report["correlation"] = m.correlation ? json(*m.correlation) : json(nullptr);
    out.write("real_vs_predicted.csv", [&](std::ostream& s) { write_real_vs_predicted_csv(s, real, predicted); });
    std::cout << fmt::format("{}: MSE {:.3f} kWh^2, r {}\n", format_date(day), m.mse,
                             m.correlation ? fmt::format("{:.4f}", *m.correlation) : "n/a");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientHistory) throw;
    std::cout << fmt::format("{}: no recorded load to compare against\n", format_date(day));
  }
  out.text("predict.json", dump_json(report));
  return json::object();
}

json run_optimize(const InputArgs& in, const ProblemArgs& pa, const OptimizerArgs& oa, const Globals& g,
                  Outputs& out) {
  const DayInputs d = resolve_inputs(in);
  const DrProblem problem = build_problem(d.predicted, d.prices, pa.w1, pa.w2, problem_options(pa, d.predicted));
  OptimizationResult r;
  std::uint64_t seed = 0;
  if (oa.algorithm == "pso") {
    seed = derive_seed(g.seed, "pso");
    r = optimize_pso(problem, pso_config(oa, seed));
  } else {
    seed = derive_seed(g.seed, "de");
    r = optimize_de(problem, de_config(oa, seed));
  }
  write_inputs(out, d);
  out.text("result.json", dump_json(to_json(r)));
  out.write("trace.csv", [&](std::ostream& s) { write_trace_csv(s, r.trace); });
  out.write("load.csv", [&](std::ostream& s) { write_load_csv(s, d.predicted, r.best_schedule); });
  out.write("cost.csv", [&](std::ostream& s) { write_cost_csv(s, d.predicted, r.best_schedule, d.prices); });
  const std::string summary = format_result_summary(r);
  out.text("summary.txt", summary);
  std::cout << summary;
  return json{{"day", d.day}, {"algorithm_seed", seed}};
}

json run_sweep(const InputArgs& in, const ProblemArgs& pa, const OptimizerArgs& oa, const Globals& g,
               Outputs& out) {
  const DayInputs d = resolve_inputs(in);
  const auto grid = standard_weight_grid();
  const WeightSweep s =
      weight_sweep(d.predicted, d.prices, grid, problem_options(pa, d.predicted), pso_config(oa, 0), g.seed);
  write_inputs(out, d);
  out.text("sweep.json", dump_json(to_json(s)));
  const std::string table = format_sweep_table(s);
  out.text("sweep.txt", table);
  std::cout << table;
  json seeds = json::array();
  for (const auto& row : s.rows) seeds.push_back(row.seed);
  return json{{"day", d.day}, {"row_seeds", seeds}};
}

json run_compare(const InputArgs& in, const ProblemArgs& pa, const OptimizerArgs& oa, const Globals& g,
                 Outputs& out) {
  const DayInputs d = resolve_inputs(in);
  const DrProblem problem = build_problem(d.predicted, d.prices, pa.w1, pa.w2, problem_options(pa, d.predicted));
  const std::uint64_t pso_seed = derive_seed(g.seed, "pso");
  const std::uint64_t de_seed = derive_seed(g.seed, "de");
  const Comparison c = compare_algorithms(problem, pso_config(oa, pso_seed), de_config(oa, de_seed));
  if (!c.budget_matched) {
    std::cerr << fmt::format("warning: evaluation budgets differ (swarm {} vs population {})\n", oa.swarm,
                             oa.population);
  }
  write_inputs(out, d);
  out.text("compare.json", dump_json(to_json(c)));
  const std::string table = format_comparison_table(c);
  out.text("compare.txt", table);
  std::cout << table;
  return json{{"day", d.day}, {"pso_seed", pso_seed}, {"de_seed", de_seed}};
}

json run_verify(const InputArgs& in, const ProblemArgs& pa, const OptimizerArgs& oa, const VerifyArgs& va,
                const Globals& g, Outputs& out) {
  const DayInputs d = resolve_inputs(in);
  const DrProblem base = build_problem(d.predicted, d.prices, pa.w1, pa.w2, problem_options(pa, d.predicted));
  ReducedProblem rp{base, {}, va.resolution};
  if (va.free_hours.empty()) {
    // The two most expensive hours.
    std::vector<std::size_t> order(kHoursPerDay);
    for (std::size_t h = 0; h < kHoursPerDay; ++h) order[h] = h;
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return d.prices[x] > d.prices[y]; });
    rp.free_hours = {order[0], order[1]};
  } else {
    for (std::size_t h : va.free_hours) {
      if (h < 1 || h > kHoursPerDay) throw UsageError(fmt::format("--free-hours: {} not in 1..24", h));
      rp.free_hours.push_back(h - 1);
    }
  }
  const GridSearchResult grid = grid_search(rp);
  const DrProblem pinned = rp.pinned_problem();
  const std::uint64_t pso_seed = derive_seed(g.seed, "pso");
  const std::uint64_t de_seed = derive_seed(g.seed, "de");
  const OptimizationResult rp_pso = optimize_pso(pinned, pso_config(oa, pso_seed));
  const OptimizationResult rp_de = optimize_de(pinned, de_config(oa, de_seed));

  json hours = json::array();
  for (std::size_t h : rp.free_hours) hours.push_back(h + 1);
  json report{{"free_hours", hours},
              {"grid_resolution", va.resolution},
              {"grid_points", grid.evaluated},
              {"oracle_objective", grid.best_objective},
              {"results", json::array()}};
  for (const auto& [r, tol] : {std::pair{&rp_pso, va.pso_tol}, std::pair{&rp_de, va.de_tol}}) {
    const double gap = relative_gap(r->objective, grid.best_objective);
    const bool pass = gap <= tol;
    report["results"].push_back(
        {{"algorithm", r->algorithm}, {"objective", r->objective}, {"relative_gap", gap}, {"tolerance", tol},
         {"pass", pass}});
    std::cout << fmt::format("[{}] {:<3} objective {:.8f} oracle {:.8f} gap {:.3e} (tol {})\n",
                             pass ? "PASS" : "FAIL", r->algorithm, r->objective, grid.best_objective, gap, tol);
  }
  write_inputs(out, d);
  out.text("verify.json", dump_json(report));
  return json{{"day", d.day}, {"pso_seed", pso_seed}, {"de_seed", de_seed}};
}

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot open config '{}'", path));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("config '{}': {}", path, e.what()));
  }
  if (!j.is_object()) throw UsageError(fmt::format("config '{}' must be a JSON object", path));
  // A manifest from an earlier run carries its settings under "parameters".
  if (j.contains("parameters")) {
    json p = j.at("parameters");
    if (j.contains("seed") && !p.contains("seed")) p["seed"] = j.at("seed");
    return p;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Day-ahead load forecasting and demand-response scheduling", "drpso"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Globals g;
  Params global_params;
  global_params.add(&app, "--seed", "seed", g.seed, "Master seed");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--config", g.config, "JSON file with option values, or a manifest from an earlier run");

  SynthArgs synth;
  TrainArgs train_args;
  InputArgs inputs;
  ProblemArgs problem;
  OptimizerArgs optimizer;
  VerifyArgs verify;

  std::vector<std::pair<CLI::App*, Params>> commands;
  auto command = [&](const char* name, const char* help) {
    commands.emplace_back(app.add_subcommand(name, help), Params{});
    return std::pair<CLI::App*, Params*>{commands.back().first, &commands.back().second};
  };
  commands.reserve(7);

  {
    auto [c, p] = command("synth", "Write a synthetic weather/load/price dataset");
    p->add(c, "--days", "days", synth.days, "Number of days")->check(CLI::Range(3, 100000));
    p->add(c, "--start", "start", synth.start, "First day YYYY-MM-DD");
    p->add(c, "--file", "file", synth.file, "File name inside --out");
  }
  {
    auto [c, p] = command("train", "Train the load forecaster");
    p->add(c, "--data", "data", train_args.data, "Dataset CSV");
    p->add(c, "--split", "split", train_args.split, "Training fraction (chronological)")
        ->check(CLI::Range(0.0, 1.0));
    p->add(c, "--lag", "lag", train_args.lag, "Lagged load hours")->check(CLI::Range(1, 24 * 14));
    p->add(c, "--hidden", "hidden", train_args.hidden, "Hidden layer widths")->delimiter(',');
    p->add(c, "--epochs", "epochs", train_args.epochs, "Training epochs")->check(CLI::Range(1, 1000000));
    p->add(c, "--lr", "learning_rate", train_args.learning_rate, "Learning rate")->check(CLI::PositiveNumber);
    p->add(c, "--momentum", "momentum", train_args.momentum, "Momentum")->check(CLI::Range(0.0, 0.999999));
    p->add(c, "--batch", "batch_size", train_args.batch, "Mini-batch size")->check(CLI::Range(1, 1000000));
    p->add(c, "--allow-gaps", "allow_gaps", train_args.allow_gaps, "Accept gaps in the hourly series");
  }
  {
    auto [c, p] = command("predict", "Predict one day with a trained model");
    add_inputs(c, *p, inputs);
  }
  {
    auto [c, p] = command("optimize", "Optimize one day's schedule");
    add_inputs(c, *p, inputs);
    add_problem(c, *p, problem);
    add_optimizer(c, *p, optimizer, true);
  }
  {
    auto [c, p] = command("sweep", "PSO over the 11-point weight grid");
    add_inputs(c, *p, inputs);
    add_problem(c, *p, problem);
    add_optimizer(c, *p, optimizer, false);
  }
  {
    auto [c, p] = command("compare", "PSO and DE on the same problem");
    add_inputs(c, *p, inputs);
    add_problem(c, *p, problem);
    add_optimizer(c, *p, optimizer, false);
  }
  {
    auto [c, p] = command("verify", "Check PSO and DE against a grid-search optimum");
    add_inputs(c, *p, inputs);
    add_problem(c, *p, problem);
    add_optimizer(c, *p, optimizer, false);
    p->add(c, "--free-hours", "free_hours", verify.free_hours, "Free hours 1..24 (default: two priciest)")
        ->delimiter(',');
    p->add(c, "--resolution", "grid_resolution", verify.resolution, "Grid points per free hour")
        ->check(CLI::Range(2, 100000));
    p->add(c, "--pso-tol", "pso_tolerance", verify.pso_tol, "PSO relative gap tolerance");
    p->add(c, "--de-tol", "de_tolerance", verify.de_tol, "DE relative gap tolerance");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  Params& params =
      std::find_if(commands.begin(), commands.end(), [&](const auto& c) { return c.first == sub; })->second;
  const std::string name = sub->get_name();

  try {
    if (!g.config.empty()) {
      json config = read_config(g.config);
      if (config.contains("seed")) {
        global_params.apply(json{{"seed", config.at("seed")}});
        config.erase("seed");
      }
      params.apply(config);
    }
    const std::string started = utc_now();
    Outputs out(g.out);
    json derived;
    if (name == "synth") derived = run_synth(synth, g, out);
    else if (name == "train") derived = run_train(train_args, g, out);
    else if (name == "predict") derived = run_predict(inputs, out);
    else if (name == "optimize") derived = run_optimize(inputs, problem, optimizer, g, out);
    else if (name == "sweep") derived = run_sweep(inputs, problem, optimizer, g, out);
    else if (name == "compare") derived = run_compare(inputs, problem, optimizer, g, out);
    else derived = run_verify(inputs, problem, optimizer, verify, g, out);

    json resolved = params.resolved();
    resolved["seed"] = g.seed;
    std::vector<std::string> argv_copy(argv, argv + argc);
    const json manifest{{"tool", "drpso"},
                        {"version", kVersion},
                        {"command", name},
                        {"argv", argv_copy},
                        {"seed", g.seed},
                        {"parameters", resolved},
                        {"derived", derived},
                        {"outputs", out.files()},
                        {"started_utc", started},
                        {"finished_utc", utc_now()}};
    out.text("manifest.json", dump_json(manifest));
  } catch (const UsageError& e) {
    std::cerr << "drpso " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "drpso " << name << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "drpso " << name << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
