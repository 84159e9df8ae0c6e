import json

import pytest

import dlpp


def test_t1_costs():
    t1 = dlpp.fixture_t1()
    assert t1.num_sort_pairs == 2 and t1.num_commodities == 3
    assert dlpp.solve(t1, "mip")["objective"] == pytest.approx(150.0)
    assert dlpp.brute_force_cost(t1) == pytest.approx(150.0)
    greedy = dlpp.solve(t1, "greedy")
    assert greedy["objective"] >= 150.0 - 1e-9


def test_gdo_prefers_reference():
    t1 = dlpp.fixture_t1()
    plan = dlpp.solve(t1, "gdo", node_limit=1000)
    counts = {e["sort_pair"]: e["count"] for e in plan["y"]}
    assert counts == {"s1": 2, "s2": 1}


def test_round_trip_and_errors():
    t1 = dlpp.fixture_t1()
    doc = json.loads(t1.to_json())
    assert dlpp.load_instance(doc) == t1
    assert dlpp.load_instance(t1.to_json()) == t1
    with pytest.raises(dlpp.ValidationError):
        dlpp.load_instance({"sort_pairs": [], "trailer_types": []})
    with pytest.raises(ValueError):
        dlpp.solve(t1, "magic")


def test_scenarios_nest():
    inst = dlpp.synthetic_terminal(2)
    cost = {s: dlpp.solve(dlpp.restrict_scenario(inst, s), "mip", node_limit=2000)["objective"]
            for s in ("primary-only", "one-alt", "all-alt")}
    assert cost["primary-only"] >= cost["one-alt"] >= cost["all-alt"]


def test_metrics():
    assert dlpp.shifted_geomean([1, 100], 1.0) == pytest.approx(13.21, abs=0.005)
    assert dlpp.normalized_distance([3], [2]) == pytest.approx(0.5)
    assert dlpp.total_variation([[0, 0], [3, 4]]) == pytest.approx(5.0)


def test_dataset_train_proxy(tmp_path):
    t1 = dlpp.fixture_t1()
    assert dlpp.generate_dataset(t1, 20, 3, tmp_path / "data") == 0
    model = dlpp.train(tmp_path / "data", seed=1, epochs=10, hidden=16)
    assert model == dlpp.train(tmp_path / "data", seed=1, epochs=10, hidden=16)
    plan = dlpp.solve(dlpp.perturb(t1, 9), "proxy", model=model)
    assert plan["objective"] > 0
    summary = dlpp.evaluate(tmp_path / "data", ["gdo", "proxy"], model)
    assert set(summary) == {"gdo", "proxy"}
