import json
import subprocess
import sys
from pathlib import Path

import pytest

from octoder.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_derive_h4_over_q(capsys):
    code, out, _ = run(capsys, "derive", "--space", "h", "--n", "4", "--field", "q")
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 20 and data["field"] == "Q"


def test_derive_h1_default_field(capsys, monkeypatch):
    monkeypatch.delenv("OCTODER_FIELD", raising=False)
    code, out, _ = run(capsys, "derive", "--space", "h", "--n", "1")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 0 and data["field"] == "Fp:101"


def test_field_env_override(capsys, monkeypatch):
    monkeypatch.setenv("OCTODER_FIELD", "mod:7")
    _, out, _ = run(capsys, "derive", "--space", "a", "--n", "1")
    assert json.loads(out)["field"] == "Fp:7"


def test_verify_a3(capsys):
    code, out, _ = run(capsys, "verify", "--space", "a", "--n", "3", "--field", "mod:101")
    assert code == 0 and json.loads(out)["span_match"] is True


def test_char_two(capsys):
    code, out, err = run(capsys, "build", "--space", "m", "--n", "2", "--product", "comm",
                         "--field", "mod:2")
    assert code == 2 and out == ""
    assert "characteristic two excluded" in err


def test_char_three_h3(capsys):
    code, _, err = run(capsys, "verify", "--space", "h", "--n", "3", "--field", "mod:3")
    assert code == 2 and "characteristic three" in err


@pytest.mark.parametrize("argv", [
    ["derive", "--n", "0"],
    ["derive", "--field", "reals"],
    ["verify", "--space", "o"],
    ["nope"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_mismatch_exit_one(capsys):
    # the full-matrix products are reported against g2 + gl_n
    code, out, _ = run(capsys, "verify", "--space", "m", "--n", "2", "--product", "std")
    data = json.loads(out)
    assert data["computed_dim"] == 17
    assert code == 1


def test_build_outputs(capsys):
    code, out, _ = run(capsys, "build", "--space", "h", "--n", "2", "--output", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "i,j,k,value" and len(lines) > 1
    code, out, _ = run(capsys, "build", "--space", "o", "--oct-type", "2")
    data = json.loads(out)
    assert data["dim"] == 8 and data["spec"]["oct_type"] == "II"


def test_build_then_derive_from_json(capsys, tmp_path):
    _, out, _ = run(capsys, "build", "--space", "a", "--n", "2", "--field", "q")
    f = tmp_path / "a2.json"
    f.write_text(out)
    code, out, _ = run(capsys, "derive", "--from-json", str(f))
    assert code == 0 and json.loads(out)["dim"] == 15


def test_emit_basis(capsys):
    _, out, _ = run(capsys, "derive", "--space", "o", "--emit-basis", "--field", "q")
    data = json.loads(out)
    assert data["dim"] == 14 and len(data["basis"]) == 14 and len(data["basis"][0]) == 64


def test_nucleus(capsys):
    for t in ("1", "2"):
        code, out, _ = run(capsys, "nucleus", "--oct-type", t, "--output", "text")
        assert code == 0 and "dim: 1" in out


def test_json_deterministic_and_timings(capsys):
    argv = ["derive", "--space", "a", "--n", "2"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b and "timings" not in a
    assert "timings" in json.loads(run(capsys, *argv, "--timings")[1])


@pytest.mark.parametrize("name", sorted(p.name for p in GOLDEN.glob("*.json")))
def test_golden(capsys, name):
    space, n, t, _ = name.split("_")
    code, _, err = run(capsys, "verify", "--space", space, "--n", n, "--oct-type", t,
                       "--golden", str(GOLDEN))
    assert code == 0, err


def test_golden_mismatch(capsys, tmp_path):
    (tmp_path / "a_1_1_mod101.json").write_text("{}\n")
    code, _, err = run(capsys, "verify", "--space", "a", "--n", "1", "--golden", str(tmp_path))
    assert code == 1 and "golden mismatch" in err
    code, _, _ = run(capsys, "verify", "--space", "a", "--n", "2", "--golden", str(tmp_path))
    assert code == 2


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--oct-type", "1", "--output", "csv")
    rows = out.splitlines()
    assert rows[0].startswith("key,check,result")
    keys = {r.split(",")[0]: r.split(",")[2] for r in rows[1:]}
    assert keys["dim/h_5/I/Fp:101"] == "pass"
    assert keys["dim/m_std_2/I/Fp:101"] == "fail"
    assert code == 1


def test_console_entry():
    r = subprocess.run([sys.executable, "-m", "octoder.cli", "derive", "--space", "h", "--n", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["dim"] == 0
