import json
import os
import pathlib

import pytest

import seasonlv

SCENARIOS = pathlib.Path(
    os.environ.get("SEASONLV_SCENARIOS", pathlib.Path(__file__).resolve().parents[2] / "scenarios")
)


def scenario(name):
    return str(SCENARIOS / f"{name}.json")


def test_class_count():
    assert seasonlv.class_count() == 33


@pytest.mark.parametrize("name,expected", [("class26", 26), ("class27", 27), ("class29", 29), ("class31", 31)])
def test_classify_examples(name, expected):
    rep = seasonlv.classify(scenario(name), oracle=True)
    assert rep["class_id"] == expected
    assert rep["degenerate_flags"] == []
    assert rep["oracle"]["agrees"]
    assert rep["exit_status"] == 0


def test_classify_accepts_dict():
    params = seasonlv.load_scenario(scenario("class26"))
    assert params["name"] == "class26"
    assert params["x0"] == [1.0, 1.0, 5.0]
    assert seasonlv.classify(params)["class_id"] == 26


def test_rational_entries():
    params = seasonlv.load_scenario(scenario("class29"))
    assert params["a"][0][0] == 238 / 325
    assert params["a"][2][1] == 73 / 26


def test_derive_growth_rates():
    d = seasonlv.derive(scenario("class26"))
    assert d["r"] == pytest.approx([1.0, 1.0, 1.0], rel=1e-14)


def test_fixed_points_class27():
    rep = seasonlv.fixed_points(scenario("class27"))
    kinds = [p["kind"] for p in rep["fixed_points"]]
    assert kinds.count("axial") == 3
    assert kinds.count("planar") == 0
    assert kinds.count("positive") >= 1
    for p in rep["fixed_points"]:
        if p["kind"] == "axial":
            assert p["stability"] == "saddle"


def test_verify_index_class29():
    rep = seasonlv.verify_index(scenario("class29"))
    assert rep["status"] == "ok"
    assert rep["lhs"] == 1


def test_orbit_closed_curve():
    rep = seasonlv.orbit(scenario("class29"), [1, 7, 1])
    assert rep["verdict"] == "closed_curve"
    assert len(rep["points"]) == 4000


def test_inadmissible_status():
    rep = seasonlv.fixed_points(scenario("inadmissible"))
    assert rep["exit_status"] == 2


def test_invalid_params_raise():
    params = seasonlv.load_scenario(scenario("class26"))
    params["phi"] = 1.5
    with pytest.raises(seasonlv.SeasonLVError):
        seasonlv.classify(params)


def test_report_round_trip():
    rep = seasonlv.classify(scenario("class31"))
    assert json.loads(json.dumps(rep)) == rep
