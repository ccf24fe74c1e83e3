"""Scenario files, report determinism, and the command line front end."""

import json
from fractions import Fraction

import pytest

from rotquad import (
    INFINITY,
    Polyline,
    ScenarioError,
    load_scenario,
    save_scenario,
    scenario_from_json,
    scenario_to_json,
)
from rotquad.catalog import golden_twist_scenario, identity_scenarios, scenario_by_name
from rotquad.cli import main
from rotquad.scenario import (
    g_from_json,
    g_to_json,
    table_from_json,
    table_to_json,
    tolerances_from_json,
)
from rotquad.algebra import quadratic_table


# ---------------------------------------------------------------------------
# serialization


def test_scenario_json_round_trip():
    sc = golden_twist_scenario(2)
    assert scenario_from_json(scenario_to_json(sc)) == sc


def test_all_catalog_scenarios_round_trip():
    for sc in identity_scenarios():
        assert scenario_from_json(scenario_to_json(sc)) == sc


def test_save_load_round_trip(tmp_path):
    sc = golden_twist_scenario(-1)
    path = tmp_path / "twist.json"
    save_scenario(sc, path)
    assert load_scenario(path) == sc
    # the file is plain JSON with the required sections
    raw = json.loads(path.read_text())
    assert "map" in raw and "points" in raw


def test_load_rejects_junk(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    with pytest.raises(ScenarioError):
        load_scenario(path)
    path2 = tmp_path / "empty.json"
    path2.write_text("{}")
    with pytest.raises(ScenarioError):
        load_scenario(path2)


def test_infinity_and_polyline_codecs():
    sc = golden_twist_scenario(1)
    blob = scenario_to_json(sc)
    names = [n for n, p in sc.points.items() if p.is_infinity]
    assert names, "golden scenario should mark infinity"
    back = scenario_from_json(blob)
    assert back.points[names[0]] == INFINITY


def test_tolerance_overrides():
    base = tolerances_from_json({"winding_snap": 0.5})
    assert base.winding_snap == 0.5
    with pytest.raises(ScenarioError):
        tolerances_from_json({"no_such_knob": 1.0})


def test_table_codec_with_fractions():
    F = quadratic_table(range(4))
    blob = table_to_json(F)
    back = table_from_json(blob)
    assert back.labels == F.labels
    for x in F.distinct_tuples():
        assert back(x) == F(x)
    # rationals survive the trip as exact p/q strings
    g = {(0, 1): Fraction(3, 2), (1, 0): Fraction(-7, 3)}
    assert g_from_json(g_to_json(g)) == g


# ---------------------------------------------------------------------------
# the command line


def _write_golden(tmp_path, m=2):
    path = tmp_path / f"twist{m}.json"
    save_scenario(golden_twist_scenario(m), path)
    return path


def test_cli_compute_exit_zero_and_deterministic_report(tmp_path, capsys):
    sc_path = _write_golden(tmp_path)
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["compute", str(sc_path), "--out", str(out1)]) == 0
    assert main(["compute", str(sc_path), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    assert payload["summary"]["fail"] == 0
    assert payload["summary"]["inconclusive"] == 0
    assert payload["records"], "compute should emit records"


def test_cli_compute_writes_csv(tmp_path):
    sc_path = _write_golden(tmp_path, m=1)
    csv_path = tmp_path / "records.csv"
    assert main(["compute", str(sc_path), "--csv", str(csv_path)]) == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("name,")
    assert len(lines) > 1


def test_cli_compute_validation_exit(tmp_path, capsys):
    sc_path = _write_golden(tmp_path)
    blob = json.loads(sc_path.read_text())
    # move a marked point off its fixed circle
    for name, val in blob["points"].items():
        if val != "inf" and val != [0.0, 0.0]:
            blob["points"][name] = [1.3, 0.0]
            break
    bad = sc_path.with_name("bad.json")
    bad.write_text(json.dumps(blob))
    assert main(["compute", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "NotFixed" in err


def test_cli_missing_file_is_validation_error(tmp_path):
    assert main(["compute", str(tmp_path / "absent.json")]) == 2


def test_cli_seed_precedence(tmp_path, monkeypatch):
    sc_path = _write_golden(tmp_path)

    def seed_of(args):
        out = tmp_path / "seedprobe.json"
        assert main(["compute", str(sc_path), "--out", str(out), *args]) == 0
        return json.loads(out.read_text())["config"]["seed"]

    assert seed_of([]) == 0  # scenario default
    monkeypatch.setenv("ROTQUAD_SEED", "7")
    assert seed_of([]) == 7  # environment beats the scenario
    assert seed_of(["--seed", "11"]) == 11  # flag beats the environment
    monkeypatch.setenv("ROTQUAD_SEED", "junk")
    assert main(["compute", str(sc_path)]) == 2  # junk env is a hard error
    assert seed_of(["--seed", "3"]) == 3  # unless the flag preempts it


def test_cli_verify_single_suite(tmp_path):
    out = tmp_path / "theta.json"
    assert main(["verify", "--suite", "theta", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["summary"]["fail"] == 0
    assert payload["summary"]["pass"] > 0


def test_cli_verify_scenario_file(tmp_path):
    sc_path = _write_golden(tmp_path, m=1)
    assert main(["verify", str(sc_path)]) == 0


def test_cli_rep(capsys):
    assert main(["rep", "--perm", "(13)"]) == 0
    out = capsys.readouterr().out
    assert "(13)" in out
    assert "-1" in out
    assert main(["rep", "--perm", "(99)"]) == 2


def test_catalog_lookup():
    sc = scenario_by_name("twist-by-2")
    assert sc.name == "twist-by-2"
    with pytest.raises(KeyError):
        scenario_by_name("no-such-scenario")
