import json

import pytest

import drpso


def test_objective_toy_values():
    problem = drpso.build_problem([10.0] * 24, [10.0] * 24, 0.5, 0.5)
    assert problem.e_cmax == pytest.approx(3600.0)
    b = drpso.evaluate(problem, [11.0] * 24)
    assert b["cost"] == pytest.approx(2640.0)
    assert b["violation"] == pytest.approx(0.1)


def test_wrong_profile_length_raises():
    with pytest.raises(drpso.DrpsoError, match="InvalidProfile"):
        drpso.build_problem([1.0] * 23, [1.0] * 24)


def test_pso_and_de_beat_or_match_the_forecast():
    day = drpso.synthetic_day(2010)
    options = drpso.ProblemOptions()
    options.peak_cap = 0.85 * max(day["load"])
    problem = drpso.build_problem(day["load"], day["prices"], 0.4, 0.6, options)
    baseline = drpso.evaluate(problem, [min(x, options.peak_cap) for x in day["load"]])["objective"]

    pso = drpso.PsoConfig()
    pso.iterations = 30
    pso.seed = 3
    r = drpso.optimize_pso(problem, pso)
    assert r.objective <= baseline
    assert max(r.best_schedule) <= options.peak_cap * (1 + 1e-12)
    assert all(b <= a for a, b in zip(r.trace, r.trace[1:]))
    assert json.loads(r.to_json())["algorithm"] == "PSO"
    assert r.to_json() == drpso.optimize_pso(problem, pso).to_json()

    de = drpso.DeConfig()
    de.iterations = 30
    assert drpso.optimize_de(problem, de).objective <= baseline


def test_oracle_and_reports():
    day = drpso.synthetic_day(7)
    problem = drpso.build_problem(day["load"], day["prices"], 1.0, 0.0)
    schedule, objective = drpso.grid_search(problem, [18], 11)
    assert schedule[18] == pytest.approx(problem.lower[18])
    assert drpso.evaluate(problem, schedule)["objective"] == pytest.approx(objective)
    assert drpso.cost_reduction(24497.938, 23250.378) == pytest.approx(5.09, abs=0.01)

    pso = drpso.PsoConfig()
    pso.iterations = 5
    sweep = drpso.weight_sweep(day["load"], day["prices"], pso=pso, master_seed=1)
    assert len(sweep["rows"]) == 11
    comparison = drpso.compare_algorithms(problem, pso, drpso.DeConfig())
    assert [row["algorithm"] for row in comparison["rows"]] == ["PSO", "DE"]
    assert comparison["budget_matched"] is False


def test_train_predict_round_trip(tmp_path):
    data = tmp_path / "synthetic.csv"
    data.write_text(drpso.synthetic_csv(days=20, seed=4))
    model, report = drpso.train_model(str(data), epochs=20, seed=1)
    assert report["epochs"] == 20
    assert report["test_mse"] is not None
    path = tmp_path / "model.txt"
    model.save(str(path))
    again = drpso.Model.load(str(path))
    assert again.layer_sizes == [29, 25, 20, 15, 1]
    first = model.predict_day(str(data), "2010-01-20")
    assert first == again.predict_day(str(data), "2010-01-20")
    assert len(first) == 24 and min(first) >= 0.0
    loads, prices = drpso.day_profiles(str(data), "2010-01-20")
    assert len(loads) == len(prices) == 24


def test_missing_file_is_io_error(tmp_path):
    with pytest.raises(drpso.DrpsoError, match="IoError"):
        drpso.train_model(str(tmp_path / "nope.csv"))
