import json
import math
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("CVEACC_CLI", "cveacc")
DATA = Path(os.environ.get("CVEACC_DATA", Path(__file__).resolve().parents[2] / "data"))
EXAMPLE = DATA / "worked_example.json"


def run(*args, check=None):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if check is not None:
        assert proc.returncode == check, proc.stdout + proc.stderr
    return proc


def run_json(*args):
    return json.loads(run("--json", *args, check=0).stdout)


def closed_form(mode, p, x):
    h, t = math.sqrt(0.5), math.sqrt(2.0)
    return {
        1: [x, h * (p - x), x, h * p - t * x],
        2: [x, t * x - h * p, p, h * x - t * p],
        3: [0.0, -t * x + h * p, x, -math.sqrt(4.5) * x],
        4: [x, h * x, 0.0, h * (p + x)],
    }[mode]


def test_syndrome_human_output():
    out = run("syndrome", EXAMPLE, "--mode", 1, "--p", 1, "--x", 1, check=0).stdout
    assert out.strip() == "syndrome: (1, 0, 1, -0.707106781187)"


@pytest.mark.parametrize("mode", [1, 2, 3, 4])
def test_syndrome_matches_table(mode):
    s = run_json("syndrome", EXAMPLE, "--mode", mode, "--p", 0.3, "--x", -1.7)["syndrome"]
    assert s == pytest.approx(closed_form(mode, 0.3, -1.7), abs=1e-12)


@pytest.mark.parametrize("mode", [1, 2, 3, 4])
def test_decode_round_trip(mode):
    s = run_json("syndrome", EXAMPLE, "--mode", mode, "--p", -2.5, "--x", 0.4)["syndrome"]
    fix = run_json("decode", EXAMPLE, "--values", *s)
    assert fix["mode"] == mode
    assert fix["mode_p"] == pytest.approx(-2.5, rel=1e-9)
    assert fix["mode_x"] == pytest.approx(0.4, rel=1e-9)


def test_decode_syndrome_file(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"syndrome": closed_form(4, 1.0, 1.0)}))
    assert "mode 4" in run("decode", EXAMPLE, "--syndrome", path, check=0).stdout


def test_two_mode_error_is_a_decode_failure(tmp_path):
    err = tmp_path / "e.json"
    err.write_text(json.dumps({"p": [1, 0, -2, 0], "x": [1, 0, 0.5, 0]}))
    s = run_json("syndrome", EXAMPLE, "--error", err)["syndrome"]
    run("decode", EXAMPLE, "--values", *s, check=5)


def test_build_compile_verify(tmp_path):
    code = tmp_path / "code.json"
    run("--output", code, "build", EXAMPLE, check=0)
    assert json.loads(code.read_text())["params"] == {"n": 4, "k": 2, "l": 0, "c": 2}
    proc = run("compile", code, check=0)
    circuit = json.loads(proc.stdout)
    assert "gates" in proc.stderr
    assert 0 < len(circuit) <= 8 * 16 + 8 * 4
    circ = tmp_path / "circuit.json"
    circ.write_text(json.dumps(circuit))
    run("verify", circ, code, check=0)

    tampered = [dict(g) for g in circuit]
    idx = next(i for i, g in enumerate(tampered) if "param" in g)
    tampered[idx]["param"] += 1e-3
    circ.write_text(json.dumps(tampered))
    assert "FAIL" in run("verify", circ, code, check=6).stdout


def test_canonical_code_compiles_to_nothing(tmp_path):
    rows = {"n": 3, "rows": [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]]}
    parity = tmp_path / "canonical.json"
    parity.write_text(json.dumps(rows))
    assert json.loads(run("compile", parity, check=0).stdout) == []


def test_decompose_reports_dropped_rows(tmp_path):
    path = tmp_path / "dep.json"
    path.write_text(json.dumps({"n": 2, "rows": [[1, 0, 0, 0], [2, 0, 0, 0], [0, 0, 1, 0]]}))
    assert "dropped dependent rows (1-based): 2" in run("decompose", path, check=0).stdout
    dec = run_json("decompose", path)
    assert dec["dropped_rows"] == [1]
    assert dec["params"] == {"n": 2, "k": 1, "l": 0, "c": 1}


def test_worked_example_decomposition():
    dec = run_json("decompose", DATA / "worked_example_original_rows.json")
    assert dec["params"]["c"] == 2 and dec["params"]["l"] == 0
    assert dec["gram_defect"] <= 1e-9


def fixtures():
    samples = []
    for mode in range(1, 5):
        for p, x in [(1.0, 1.0), (0.3, -1.7)]:
            samples.append({"mode": mode, "p": p, "x": x, "expected": closed_form(mode, p, x)})
    return {
        "original": json.loads((DATA / "worked_example_original_rows.json").read_text()),
        "H": json.loads(EXAMPLE.read_text()),
        "params": {"n": 4, "k": 2, "l": 0, "c": 2},
        "syndromes": samples,
    }


def test_selftest(tmp_path):
    assert run_json("selftest")["passed"] is True
    good = tmp_path / "good.json"
    good.write_text(json.dumps(fixtures()))
    run("selftest", "--fixtures", good, check=0)

    bad = fixtures()
    bad["syndromes"][2]["expected"][1] += 0.05
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    proc = run("--json", "selftest", "--fixtures", path, check=1)
    assert json.loads(proc.stdout)["passed"] is False


def test_simulate_is_deterministic(tmp_path):
    config = tmp_path / "exp.json"
    config.write_text(json.dumps({
        "code_file": str(EXAMPLE), "error": {"mode": 3, "p": 0.5, "x": -0.5},
        "squeezing_r": 8.0, "trials": 80, "seed": 1}))
    a = run("--json", "--seed", 42, "simulate", config, check=0).stdout
    b = run("--json", "--seed", 42, "simulate", config, "--threads", 4, check=0).stdout
    c = run("--json", "--seed", 43, "simulate", config, check=0).stdout
    assert a == b
    assert a != c
    stats = json.loads(a)
    assert stats["correct_mode"] == 80


def test_simulate_relative_code_path():
    out = run("simulate", DATA / "experiment_mode1.json", check=0).stdout
    assert "correct mode fraction 1" in out


@pytest.mark.parametrize("content,code", [
    ("{ not json", 2),
    ('{"n": 2, "rows": [[1, 0]]}', 3),
])
def test_exit_codes(tmp_path, content, code):
    path = tmp_path / "m.json"
    path.write_text(content)
    run("decompose", path, check=code)


def test_usage_errors():
    run(check=2)
    run("decompose", "/nonexistent.json", check=2)
    run("--tolerance", "-1", "selftest", check=2)
