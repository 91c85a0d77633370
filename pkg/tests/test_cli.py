import json
import math
import re
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from f1hall import schemas
from f1hall.cli import EXIT_CHECK, EXIT_INPUT, EXIT_OK, main

GOLDEN = Path(__file__).parent / "golden"
MONOIDS = Path(__file__).parent.parent / "monoids"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == EXIT_OK
    return json.loads(out)


def test_comm_golden(capsys):
    code, out, _ = run(capsys, "eha", "comm", "1,1", "0,1")
    assert code == EXIT_OK
    assert out == (GOLDEN / "eha_comm.txt").read_text(encoding="utf-8")
    assert out.strip() == "(s - s^-1)·w(1,2)"


def test_eval_golden(capsys):
    code, out, _ = run(capsys, "eha", "eval", "w(1,1)*w(0,1) - w(0,1)*w(1,1)")
    assert code == EXIT_OK and out.strip() == "(s - s^-1)·w(1,2)"
    data = run_json(capsys, "eha", "eval", "w(1,1)*w(0,1) - w(0,1)*w(1,1)")
    assert data == json.loads((GOLDEN / "eha_eval_skein.json").read_text(encoding="utf-8"))
    jsonschema.validate(data, schemas.EHA_EVAL)


def test_eval_power(capsys):
    data = run_json(capsys, "eha", "eval", "w(1,0)^2")
    assert [t["mono"] for t in data["element"]["terms"]] == [[[[1, 0], 2]]]


def test_hall_golden(capsys):
    code, out, _ = run(capsys, "hall", "--monoid", str(MONOIDS / "f1.json"), "--max-size", "3")
    assert code == EXIT_OK
    assert out == (GOLDEN / "hall_f1_3.txt").read_text(encoding="utf-8")
    for a, b, c, n in re.findall(r"\[(\d)\] \* \[(\d)\] = (\d+)\*\[(\d)\]", out):
        assert int(c) == math.comb(int(n), int(a)) and int(n) == int(a) + int(b)


def test_zeta_golden(capsys):
    code, out, _ = run(capsys, "zeta", "--order", "5")
    assert code == EXIT_OK
    assert out == (GOLDEN / "zeta_5.txt").read_text(encoding="utf-8")
    assert out.strip() == "OK: N_n = 2 - q^n - q^-n for n ≤ 5"


def test_json_schemas(capsys):
    jsonschema.validate(run_json(capsys, "eha", "table", "--max-norm", "2"), schemas.EHA_TABLE)
    jsonschema.validate(run_json(capsys, "theta", "--k", "2"), schemas.THETA)
    hall_t = run_json(capsys, "hall", "--monoid", "t3", "--max-size", "3", "--assoc-check")
    jsonschema.validate(hall_t, schemas.HALL_TABLE)
    assert hall_t["assoc_check"]["passed"]
    jsonschema.validate(run_json(capsys, "double", "--monoid", "f1", "--deg", "3"), schemas.DOUBLE_TABLE)
    atlas = run_json(capsys, "tate", "--charts", "-1", "1")
    jsonschema.validate(atlas, schemas.ATLAS)
    assert all(atlas["checks"].values())


def test_monoid_files_validate():
    for p in MONOIDS.glob("*.json"):
        jsonschema.validate(json.loads(p.read_text(encoding="utf-8")), schemas.MONOID)


def test_theta_limit(capsys):
    code, out, _ = run(capsys, "theta", "--limit", "3")
    assert code == EXIT_OK
    assert "s^4 + 2*s^2 + 3 + 2*s^-2 + s^-4" in out


def test_tate_text(capsys):
    code, out, _ = run(capsys, "tate", "--charts", "0", "1")
    assert code == EXIT_OK
    assert "chart 0: x=(1, 0) y=(-1, 1) q=(0, 1)" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["eha", "eval", "w(0,0)"],
        ["eha", "eval", "w(1,"],
        ["eha", "eval", "u(1,0)"],
        ["eha", "comm", "1", "0,1"],
        ["theta", "--k", "0"],
        ["theta"],
        ["zeta", "--order", "0"],
        ["hall", "--monoid", "/nonexistent.json", "--max-size", "2"],
        ["hall", "--monoid", "f1", "--max-size", "99"],
        ["tate", "--charts", "2", "1"],
        ["bogus"],
        ["zeta"],
    ],
)
def test_input_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse rejections
        code = exc.code
    _, err = capsys.readouterr()
    assert code == EXIT_INPUT
    assert err


def test_bad_monoid_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"elements": ["0", "1"], "mul": [["0", "0"], ["0", "0"]]}))
    code, _, err = run(capsys, "hall", "--monoid", str(p), "--max-size", "1")
    assert code == EXIT_INPUT and "error" in err
    p.write_text("{not json")
    assert run(capsys, "hall", "--monoid", str(p), "--max-size", "1")[0] == EXIT_INPUT


def test_max_size_env(monkeypatch, capsys):
    monkeypatch.setenv("F1HALL_MAX_SIZE", "2")
    assert run(capsys, "hall", "--monoid", "f1", "--max-size", "3")[0] == EXIT_INPUT
    assert run(capsys, "hall", "--monoid", "f1", "--max-size", "2")[0] == EXIT_OK


def test_selftest_reports_failure(capsys):
    code, out, _ = run(capsys, "selftest", "--skip", "jacobi", "--skip", "confluence")
    # the non-primitive branch of relation (2) fails, so the suite reports it
    assert code == EXIT_CHECK
    assert "FAIL  relation2_all" in out
    assert "PASS  relation2_primitive" in out
    code, out, _ = run(capsys, "selftest", "--skip", "relation2_all", "--skip", "jacobi", "--skip", "confluence")
    assert code == EXIT_OK


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "f1hall", "eha", "comm", "1,1", "0,1"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "(s - s^-1)·w(1,2)"
    r = subprocess.run([sys.executable, "-m", "f1hall", "eha", "eval", "w(0,0)"], capture_output=True, text=True)
    assert r.returncode == EXIT_INPUT and "zero vector" in r.stderr
