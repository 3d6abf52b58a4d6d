import json
import math
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

import symdyn

CLI = os.environ.get("SYMDYN_CLI")
SCHEMA = os.environ.get("SYMDYN_SCHEMA", str(Path(__file__).parents[2] / "schema" / "report.schema.json"))
CONFIGS = Path(os.environ.get("SYMDYN_CONFIGS", str(Path(__file__).parents[2] / "configs")))

GOLDEN = [[1, 1], [1, 0]]
KASNER_MATRIX = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def schema():
    with open(SCHEMA) as f:
        return json.load(f)


def test_matrix_basics():
    a = symdyn.TransitionMatrix(GOLDEN)
    assert a.size == 2
    assert a.to_rows() == GOLDEN
    assert symdyn.spectral_radius(a)["lambda"] == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-12)
    assert [symdyn.count_words(a, n) for n in range(1, 6)] == [2, 3, 5, 8, 13]
    assert symdyn.count_words(symdyn.TransitionMatrix([[1, 1], [1, 1]]), 100) == 2**100
    assert symdyn.is_irreducible(a)
    assert symdyn.is_primitive(a) == (True, 2)
    assert symdyn.has_full_cycle(a)


def test_invalid_matrix_raises_with_code():
    with pytest.raises(symdyn.SymdynError) as info:
        symdyn.TransitionMatrix([[1, 0], [0, 0]])
    assert info.value.code == "ZeroRow"


def test_sequences():
    s = symdyn.SymbolSequence([1], [2, 1])
    assert s.prefix(5) == [1, 2, 1, 2, 1]
    assert symdyn.shift(s) == symdyn.SymbolSequence([], [2, 1])
    a = symdyn.TransitionMatrix(GOLDEN)
    assert symdyn.is_admissible(a, s)
    assert not symdyn.is_admissible_word(a, [2, 2])
    assert symdyn.sequence_metric(s, s) == 0.0


def test_kasner_pipeline():
    k = symdyn.make_builtin("kasner")
    assert k.map.is_circle
    assert symdyn.infer_matrix(k.map, k.partition).to_rows() == KASNER_MATRIX
    rep = symdyn.verify(k.map, k.partition, k.matrix)
    assert rep["covering"] and rep["equality"] and not rep["strict"]
    v = symdyn.entropy_verdict(k.map, k.partition, k.matrix, 10)
    assert v["exact"] == pytest.approx(math.log(2))
    assert v["devaney"] and v["li_yorke"]
    assert symdyn.kasner_angle(math.pi / 6) == pytest.approx(1.7874274003484415, abs=1e-14)
    assert symdyn.kasner_derivative(0.0) == pytest.approx(-3.0)
    assert symdyn.preimage_count(k.map, k.partition, k.matrix, math.pi, 10) == 2
    w = symdyn.scrambled_pair_witness(100)
    assert w["min_distance"] < 1e-3 and w["max_distance"] > 0.1


def test_cylinders_and_factor_points():
    d = symdyn.make_builtin("doubling")
    c = symdyn.cylinder(d.map, d.partition, [1, 2])
    assert c["start"] == pytest.approx(math.pi / 2)
    point, radius, certified = symdyn.factor_point(d.map, d.partition, symdyn.SymbolSequence([], [1, 2]))
    assert point == pytest.approx(2 * math.pi / 3, abs=1e-10)
    assert certified and radius < 1e-9
    counts = symdyn.entropy_by_cylinders(d.map, d.partition, 6)
    assert [c for _, c, _ in counts] == [2, 4, 8, 16, 32, 64]
    assert symdyn.itinerary(d.map, d.partition, d.matrix, math.pi / 4, 3) == [[1, 1, 1], [1, 1, 2]]


def test_run_analysis_matches_schema():
    report = symdyn.run_analysis({"map": "tent", "options": {"depth": 6, "n_max": 6}})
    jsonschema.validate(report, schema())
    assert report["errors"] == []
    assert report["entropy"]["exact"] == pytest.approx(math.log(2))


def test_matrix_report():
    r = symdyn.matrix_report(GOLDEN, 10)
    assert r["word_counts"][-1]["count"] == "144"


@pytest.mark.skipif(CLI is None, reason="SYMDYN_CLI not set")
@pytest.mark.parametrize("name", ["kasner", "doubling", "golden", "two_laps"])
def test_cli_reports_validate(tmp_path, name):
    out = tmp_path / f"{name}.json"
    proc = subprocess.run([CLI, "analyze", "--config", str(CONFIGS / f"{name}.json"), "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    report = json.loads(out.read_text())
    jsonschema.validate(report, schema())
    assert report["errors"] == []


@pytest.mark.skipif(CLI is None, reason="SYMDYN_CLI not set")
def test_cli_error_report_validates(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"map": "kasner", "matrix": [[1, 1], [1, 1]]}))
    out = tmp_path / "bad_report.json"
    proc = subprocess.run([CLI, "analyze", "--config", str(cfg), "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 3
    report = json.loads(out.read_text())
    jsonschema.validate(report, schema())
    assert report["errors"][0]["code"] == "DimensionMismatch"
