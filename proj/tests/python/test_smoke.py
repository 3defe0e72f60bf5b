import json
import math
from pathlib import Path

import pytest

import roadsafe

GOLDEN = Path(__file__).resolve().parents[1] / "golden"


def test_danger_value_reference_point():
    assert roadsafe.danger_value(1.0, 0.65, 0.0) == pytest.approx(1.0 / math.log(1.6))
    assert roadsafe.decide(roadsafe.danger_value(1.0, 0.65, 0.0)) == "dangerous"
    assert roadsafe.decide(None) == "unknown"


def test_params_are_configurable():
    p = roadsafe.DangerParams()
    assert p.k == 0.1 and p.epsilon == 0.6
    p.g_star = 5.0
    assert roadsafe.decide(2.0, p) == "safe"
    p.v_hi = p.v_lo
    with pytest.raises(roadsafe.RoadsafeError):
        p.validate()


def test_transforms_saturate():
    assert roadsafe.speed_transform(0.0) == 0.0
    assert roadsafe.speed_transform(2.0) == 1.0
    assert roadsafe.accel_transform(-20.0) == -1.0


def test_kinematic_check_and_oracle():
    verdict, margin = roadsafe.kinematic_safety_check(1.0, 0.65, 0.0)
    assert verdict == "unsafe"
    assert margin == pytest.approx(1.95)
    assert roadsafe.kinematic_safety_check(100.0, 0.1, 0.0)[0] == "safe"
    assert roadsafe.collision_oracle(100.0, 0.1, 0.0) == "safe"


def test_majority_vote_ties_go_dangerous():
    assert roadsafe.majority_vote(["safe", "safe", "dangerous"]) == "safe"
    assert roadsafe.majority_vote(["safe", "dangerous", "unknown"]) == "dangerous"
    with pytest.raises(roadsafe.RoadsafeError):
        roadsafe.majority_vote(["maybe"])


def test_metrics():
    r = roadsafe.classification_report(["dangerous", "safe", "unknown"], ["dangerous", "dangerous", "safe"])
    assert (r["tp"], r["fn"], r["excluded_points"]) == (1, 1, 1)
    assert r["recall"] == 0.5
    assert roadsafe.rmse([1.0, None, 3.0], [1.0, 2.0, 1.0]) == pytest.approx(math.sqrt(2.0))
    with pytest.raises(roadsafe.InsufficientData):
        roadsafe.rmse([None], [1.0])


def test_pipeline_matches_golden_files():
    scenario = (GOLDEN / "scenario.json").read_text()
    csv = roadsafe.simulate(scenario)
    assert csv == (GOLDEN / "recording.csv").read_text()
    assert roadsafe.fuse(csv) == (GOLDEN / "fused.csv").read_text()
    assert roadsafe.report_table(csv) == (GOLDEN / "report.txt").read_text()

    reports = roadsafe.evaluate(csv)
    expected = json.loads((GOLDEN / "report.json").read_text())
    assert [r["source"] for r in reports] == [e["source"] for e in expected]
    for got, want in zip(reports, expected):
        assert got["tp"] == want["tp"]
        assert got["accuracy"] == pytest.approx(want["accuracy"])


def test_simulate_seed_and_config():
    assert roadsafe.simulate(seed=1) == roadsafe.simulate(seed=1)
    assert roadsafe.simulate(seed=1) != roadsafe.simulate(seed=2)
    csv = roadsafe.simulate()
    low = roadsafe.evaluate(csv, json.dumps({"danger": {"g_star": 0.2}}))
    high = roadsafe.evaluate(csv, json.dumps({"danger": {"g_star": 5.0}}))
    assert low[0]["tp"] + low[0]["fp"] >= high[0]["tp"] + high[0]["fp"]


def test_plotdata_and_errors():
    text = roadsafe.plotdata((GOLDEN / "fused.csv").read_text())
    assert text.startswith("timestamp,series,value\n")
    assert "0.000000,g_star,1.000000\n" in text
    with pytest.raises(roadsafe.ParseError):
        roadsafe.fuse("timestamp,foo\n0,1\n")
    with pytest.raises(roadsafe.RoadsafeError):
        roadsafe.evaluate("timestamp,distance_range,distance_wheelchair,distance_drone\n0,1,1,1\n0.1,1,1,1\n")
