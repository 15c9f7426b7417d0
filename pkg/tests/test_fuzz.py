import json

from softtop.fuzz import PROPERTIES, Outcome, run_fuzz
from softtop.oracle import OracleConfig


def test_outcome_counts():
    out = Outcome()
    out.expect(True, "never")
    out.expect(False, lambda: "lazy detail")
    assert out.checks == 2 and out.failures == ["lazy detail"]


def test_report_is_deterministic_and_sorted():
    cfg = OracleConfig(seed=17, iterations=4)
    a = json.dumps(run_fuzz(cfg), sort_keys=True)
    b = json.dumps(run_fuzz(cfg), sort_keys=True)
    assert a == b
    assert "time" not in a


def test_subset_of_properties_uses_same_streams():
    cfg = OracleConfig(seed=5, iterations=3)
    full = run_fuzz(cfg)
    name = "continuity criteria agree"
    single = run_fuzz(cfg, [name])
    assert single["properties"][name] == full["properties"][name]


def test_every_property_counts_instances():
    report = run_fuzz(OracleConfig(seed=1, iterations=2))
    assert set(report["properties"]) == set(PROPERTIES)
    assert report["ok"]


def test_failures_are_reported_with_instance(monkeypatch):
    import softtop.fuzz as fz

    def broken(rng, cfg):
        out = Outcome()
        out.expect(False, "planted failure")
        return out

    monkeypatch.setitem(fz.PROPERTIES, "algebra laws", broken)
    report = fz.run_fuzz(OracleConfig(seed=0, iterations=2), ["algebra laws"])
    assert not report["ok"]
    assert report["failures"] == [
        {"instance": 0, "property": "algebra laws", "detail": "planted failure"},
        {"instance": 1, "property": "algebra laws", "detail": "planted failure"},
    ]
