#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "drpso/de.hpp"
#include "drpso/error.hpp"
#include "drpso/forecaster.hpp"
#include "drpso/ingest.hpp"
#include "drpso/objective.hpp"
#include "drpso/oracle.hpp"
#include "drpso/pso.hpp"
#include "drpso/report.hpp"
#include "drpso/synth.hpp"

namespace py = pybind11;
using namespace drpso;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

HourlyProfile load_profile(const std::vector<double>& v) {
  return HourlyProfile::from_span(ProfileKind::Load, v);
}

HourlyProfile price_profile(const std::vector<double>& v) {
  return HourlyProfile::from_span(ProfileKind::Price, v);
}

std::vector<double> to_vector(const HourlyProfile& p) { return {p.values().begin(), p.values().end()}; }

Date to_date(const std::string& text) {
  const auto d = parse_date(text);
  if (!d) throw Error(ErrorCode::InvalidConfig, "bad date '" + text + "', expected YYYY-MM-DD");
  return *d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Day-ahead load forecasting and demand-response scheduling";
  py::register_exception<Error>(m, "DrpsoError", PyExc_RuntimeError);

  // ---- data
  m.def(
      "synthetic_csv",
      [](int days, std::uint64_t seed) {
        SynthOptions o;
        o.days = days;
        o.seed = seed;
        std::ostringstream out;
        write_dataset(out, generate_dataset(o));
        return out.str();
      },
      py::arg("days") = 120, py::arg("seed") = 0);
  m.def(
      "synthetic_day",
      [](std::uint64_t seed, int days) {
        const DayInstance d = synthetic_day(seed, days);
        py::dict out;
        out["day"] = format_date(d.day);
        out["load"] = to_vector(d.load);
        out["prices"] = to_vector(d.prices);
        return out;
      },
      py::arg("seed"), py::arg("days") = 7);
  m.def(
      "day_profiles",
      [](const std::filesystem::path& data, const std::string& day) {
        const Dataset ds = load_dataset(data);
        return py::make_tuple(to_vector(day_loads(ds, to_date(day))), to_vector(day_prices(ds, to_date(day))));
      },
      py::arg("data"), py::arg("day"), "(loads, prices) recorded for one day");

  // ---- objective
  py::class_<ProblemOptions>(m, "ProblemOptions")
      .def(py::init<>())
      .def_readwrite("gamma_lo", &ProblemOptions::gamma_lo)
      .def_readwrite("gamma_hi", &ProblemOptions::gamma_hi)
      .def_readwrite("peak_cap", &ProblemOptions::peak_cap)
      .def_readwrite("alpha", &ProblemOptions::alpha)
      .def_property(
          "symmetric_violation", [](const ProblemOptions& o) { return o.violation_mode == ViolationMode::Symmetric; },
          [](ProblemOptions& o, bool on) { o.violation_mode = on ? ViolationMode::Symmetric : ViolationMode::OneSided; });

  py::class_<DrProblem>(m, "DrProblem")
      .def_property_readonly("predicted", [](const DrProblem& p) { return to_vector(p.predicted); })
      .def_property_readonly("prices", [](const DrProblem& p) { return to_vector(p.prices); })
      .def_readonly("lower", &DrProblem::lower)
      .def_readonly("upper", &DrProblem::upper)
      .def_readonly("w1", &DrProblem::w1)
      .def_readonly("w2", &DrProblem::w2)
      .def_readonly("alpha", &DrProblem::alpha)
      .def_readonly("e_cmax", &DrProblem::e_cmax)
      .def_readonly("l_shmax", &DrProblem::l_shmax);

  m.def(
      "build_problem",
      [](const std::vector<double>& predicted, const std::vector<double>& prices, double w1, double w2,
         const ProblemOptions& options) {
        return build_problem(load_profile(predicted), price_profile(prices), w1, w2, options);
      },
      py::arg("predicted"), py::arg("prices"), py::arg("w1") = 0.4, py::arg("w2") = 0.6,
      py::arg("options") = ProblemOptions{});
  m.def(
      "evaluate",
      [](const DrProblem& p, const Schedule& s) {
        const ObjectiveBreakdown b = evaluate(p, s);
        py::dict out;
        out["cost"] = b.cost;
        out["load_shift"] = b.load_shift;
        out["violation"] = b.violation;
        out["objective"] = b.objective;
        return out;
      },
      py::arg("problem"), py::arg("schedule"));

  // ---- optimizers
  py::class_<PsoConfig>(m, "PsoConfig")
      .def(py::init<>())
      .def_readwrite("swarm_size", &PsoConfig::swarm_size)
      .def_readwrite("iterations", &PsoConfig::iterations)
      .def_readwrite("w", &PsoConfig::w)
      .def_readwrite("c1", &PsoConfig::c1)
      .def_readwrite("c2", &PsoConfig::c2)
      .def_readwrite("v_max_fraction", &PsoConfig::v_max_fraction)
      .def_readwrite("seed", &PsoConfig::seed)
      .def_readwrite("seed_with_predicted", &PsoConfig::seed_with_predicted);

  py::class_<DeConfig>(m, "DeConfig")
      .def(py::init<>())
      .def_readwrite("population_size", &DeConfig::population_size)
      .def_readwrite("iterations", &DeConfig::iterations)
      .def_readwrite("beta_min", &DeConfig::beta_min)
      .def_readwrite("beta_max", &DeConfig::beta_max)
      .def_readwrite("crossover_probability", &DeConfig::crossover_probability)
      .def_readwrite("seed", &DeConfig::seed)
      .def_readwrite("seed_with_predicted", &DeConfig::seed_with_predicted);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("algorithm", &OptimizationResult::algorithm)
      .def_property_readonly("best_schedule", [](const OptimizationResult& r) { return to_vector(r.best_schedule); })
      .def_readonly("objective", &OptimizationResult::objective)
      .def_readonly("cost", &OptimizationResult::cost)
      .def_readonly("load_shift", &OptimizationResult::load_shift)
      .def_readonly("violation", &OptimizationResult::violation)
      .def_readonly("baseline_cost", &OptimizationResult::baseline_cost)
      .def_readonly("peak_before", &OptimizationResult::peak_before)
      .def_readonly("peak_after", &OptimizationResult::peak_after)
      .def_readonly("evaluations", &OptimizationResult::evaluations)
      .def_property_readonly("violation_flagged", &OptimizationResult::violation_flagged)
      .def_property_readonly("trace",
                             [](const OptimizationResult& r) {
                               std::vector<double> t;
                               for (const auto& p : r.trace) t.push_back(p.best_objective);
                               return t;
                             })
      .def("to_json", [](const OptimizationResult& r) { return dump_json(to_json(r)); });

  m.def(
      "optimize_pso", [](const DrProblem& p, const PsoConfig& c) { return optimize_pso(p, c); },
      py::arg("problem"), py::arg("config") = PsoConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("optimize_de", &optimize_de, py::arg("problem"), py::arg("config") = DeConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "grid_search",
      [](const DrProblem& p, const std::vector<std::size_t>& free_hours, std::size_t resolution) {
        const GridSearchResult r = grid_search(ReducedProblem{p, free_hours, resolution});
        return py::make_tuple(r.best_schedule, r.best_objective);
      },
      py::arg("problem"), py::arg("free_hours"), py::arg("resolution") = 101,
      "Exhaustive search over 0-based free hours; the rest stay at the forecast.");
  m.def("relative_gap", &relative_gap);

  // ---- reports
  m.def("cost_reduction", &cost_reduction, py::arg("before"), py::arg("after"));
  m.def("peak_reduction", &peak_reduction, py::arg("before"), py::arg("after"));
  m.def("standard_weight_grid", &standard_weight_grid);
  m.def(
      "weight_sweep",
      [](const std::vector<double>& predicted, const std::vector<double>& prices, const ProblemOptions& options,
         const PsoConfig& pso, std::uint64_t master_seed,
         std::optional<std::vector<std::pair<double, double>>> weights) {
        const auto grid = weights ? *weights : standard_weight_grid();
        return to_python(
            to_json(weight_sweep(load_profile(predicted), price_profile(prices), grid, options, pso, master_seed)));
      },
      py::arg("predicted"), py::arg("prices"), py::arg("options") = ProblemOptions{},
      py::arg("pso") = PsoConfig{}, py::arg("master_seed") = 0, py::arg("weights") = py::none());
  m.def(
      "compare_algorithms",
      [](const DrProblem& p, const PsoConfig& pso, const DeConfig& de) {
        return to_python(to_json(compare_algorithms(p, pso, de)));
      },
      py::arg("problem"), py::arg("pso") = PsoConfig{}, py::arg("de") = DeConfig{});

  // ---- forecaster
  py::class_<MlpModel>(m, "Model")
      .def_readonly("layer_sizes", &MlpModel::layer_sizes)
      .def_readonly("lag", &MlpModel::lag)
      .def_static("load", &load_model, py::arg("path"))
      .def("save", [](const MlpModel& mo, const std::filesystem::path& path) { save_model(path, mo); })
      .def(
          "predict_day",
          [](const MlpModel& mo, const std::filesystem::path& data, const std::string& day) {
            LoadOptions lenient;
            lenient.allow_gaps = true;
            return to_vector(predict_day(mo, load_dataset(data, lenient), to_date(day)));
          },
          py::arg("data"), py::arg("day"));

  m.def(
      "train_model",
      [](const std::filesystem::path& data, double split, std::size_t lag, std::vector<std::size_t> hidden,
         std::size_t epochs, double learning_rate, double momentum, std::size_t batch_size, std::uint64_t seed) {
        const Dataset ds = split_chronological(load_dataset(data), split);
        std::vector<std::size_t> sizes{WeatherRecord::kFeatureCount + lag};
        sizes.insert(sizes.end(), hidden.begin(), hidden.end());
        sizes.push_back(1);
        MlpModel model = init_model(sizes, derive_seed(seed, "init"));
        model.lag = lag;
        model.norm_stats = fit_normalizer(ds);
        TrainConfig cfg;
        cfg.epochs = epochs;
        cfg.learning_rate = learning_rate;
        cfg.momentum = momentum;
        cfg.batch_size = batch_size;
        cfg.seed = derive_seed(seed, "train");
        TrainOutcome out;
        {
          py::gil_scoped_release release;
          out = train(model, build_windows(ds, lag), cfg);
        }
        return py::make_tuple(out.model, to_python(to_json(out.report)));
      },
      py::arg("data"), py::arg("split") = 0.85, py::arg("lag") = 24,
      py::arg("hidden") = std::vector<std::size_t>{25, 20, 15}, py::arg("epochs") = 1000,
      py::arg("learning_rate") = 0.01, py::arg("momentum") = 0.9, py::arg("batch_size") = 32, py::arg("seed") = 0,
      "Returns (model, fit report). Seeds are derived the same way as the command-line tool.");
}
