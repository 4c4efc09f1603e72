import csv
import json
import subprocess
import sys

import pytest

from selberg_lab import corpus
from selberg_lab.cli import config_hash, main, resolve_config


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_degree_prints_one(capsys):
    assert run(capsys, "degree", "zeta") == (0, "1\n", "")
    status, out, _ = run(capsys, "degree", "zeta_l_chi4")
    assert out == "2\n"


def test_degree_json_output(tmp_path, capsys):
    target = tmp_path / "d.json"
    assert run(capsys, "degree", "delta", "-o", str(target))[0] == 0
    doc = json.loads(target.read_text())
    assert doc["degree"] in (2, "2")
    assert len(doc["config_hash"]) == 16


def test_validate_bundled(capsys):
    for name in corpus.BUNDLED:
        if name == "zeta_one_minus_2":
            continue
        status, out, _ = run(capsys, "validate", name)
        assert status == 0, name
        assert json.loads(out)["violations"] == []


def test_classify_polynomial(capsys):
    status, out, _ = run(capsys, "classify", "zeta_one_minus_2")
    assert status == 0
    doc = json.loads(out)
    (comp,) = doc["result"]["decomposition"]
    assert comp["conductor"] == 1
    assert comp["polynomial"] == [[1, [1.0, 0.0]], [2, [-1.0, 0.0]]]


def test_eval_csv(capsys):
    status, out, _ = run(capsys, "eval", "zeta", "--t-start", "0", "--t-stop", "1", "--t-step", "1")
    assert status == 0
    assert "\r\n" in out
    rows = list(csv.DictReader(out.splitlines()))
    assert len(rows) == 2
    assert abs(float(rows[0]["re"]) + 1.4603545088) < 1e-6
    assert len({r["config_hash"] for r in rows}) == 1


def test_gamma_sets_difference(capsys):
    status, out, _ = run(capsys, "gamma-sets", "--minuend", "2,0", "--subtrahend", "1,0")
    assert status == 0
    assert json.loads(out)["difference"] is not None


def test_zeros_count(capsys):
    status, out, _ = run(capsys, "zeros", "zeta", "--rect", "0,1,0,30", "--no-locate")
    assert status == 0
    assert json.loads(out)["count"] == 3


def test_detect_small(capsys):
    status, out, _ = run(capsys, "detect", "zeta", "--alpha", "1", "--T", "150,300", "--offsets", "1")
    assert status == 0
    rows = list(csv.DictReader(out.splitlines()))
    assert [float(r["T"]) for r in rows] == [150.0, 300.0]
    assert all(float(r["gap"]) < 0.02 for r in rows)


def test_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (a, b):
        assert run(capsys, "gamma-asym", "l_chi4", "--points", "5", "-o", str(target))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_hash_ignores_output_and_workers(tmp_path):
    base = resolve_config(["degree", "zeta"])
    moved = resolve_config(["--workers", "3", "degree", "zeta", "-o", str(tmp_path / "x")])
    assert config_hash(base) == config_hash(moved)
    assert config_hash(base) != config_hash(resolve_config(["degree", "l_chi4"]))


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"t-start": 0, "t-stop": 2, "t-step": 1}))
    status, out, _ = run(capsys, "--config", str(cfg), "eval", "zeta", "--t-stop", "0")
    assert status == 0
    assert len(list(csv.DictReader(out.splitlines()))) == 1


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "--config", str(cfg), "degree", "zeta")[0] == 2


def test_unknown_spec_key(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "x", "fe": {"Q": 1}, "coefficients": {"kind": "periodic", "residues": [1]}, "colour": 1}))
    status, _, err = run(capsys, "degree", str(bad))
    assert status == 2 and "colour" in err


def test_missing_spec(capsys):
    assert run(capsys, "degree", "no_such_spec")[0] == 2


def test_precondition_exit_code(capsys):
    # the contour term needs a direct evaluator; the Delta coefficients are a finite table
    assert run(capsys, "eval", "delta", "--t-stop", "0")[0] == 4


def test_degree_gate_exit_code(tmp_path, capsys):
    spec = {
        "name": "half",
        "coefficients": {"kind": "periodic", "residues": [1]},
        "fe": {"Q": 1, "numerator": [{"lambda": "1/4", "mu": [0, 0]}]},
    }
    path = tmp_path / "half.json"
    path.write_text(json.dumps(spec))
    status, _, err = run(capsys, "classify", str(path))
    assert status == 4 and "between 0 and 1" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "selberg_lab.cli", "degree", "l_chi3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"


@pytest.mark.parametrize("argv", [[], ["frobnicate"]])
def test_bad_usage(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
