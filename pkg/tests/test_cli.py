import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qpw.cli import run
from qpw.cyclo import CycloScalar
from qpw.mbf import MBF, translate
from qpw.psdo import apply, parse_symbol
from qpw.wavelets import psi0


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(text):
    data = json.loads(text)
    assert data["schema"] == "qpw/1"
    return data


def test_check_refinement(capsys):
    for p in ("2", "3", "5"):
        code, out, _ = call(capsys, "check-refinement", "--p", p)
        assert code == 0
        assert as_json(out)["identity holds"] is True


def test_check_orthonormal(capsys):
    code, out, _ = call(capsys, "check-orthonormal", "--j-range=-1..1", "--gamma-max", "2")
    assert code == 0 and as_json(out)["identity"] is True
    code, out, _ = call(capsys, "check-orthonormal", "--n", "2", "--j-range", "0", "--gamma-max", "1")
    assert code == 0
    code, out, _ = call(capsys, "check-orthonormal", "--p", "3", "--j-range=-1..1", "--gamma-max", "1")
    assert code == 0 and as_json(out)["size"] == 18


def test_scaled_basis_fails(capsys):
    code, out, _ = call(capsys, "check-orthonormal", "--scale", "2")
    assert code == 1
    data = as_json(out)
    assert data["identity"] is False and data["violations"][0]["row"] == 0


def test_gen_basis_csv_and_json(capsys):
    code, out, _ = call(capsys, "gen-basis", "--n", "2", "--j-range", "0", "--gamma-max", "0", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["e"] for r in rows] == ["1", "2", "1 2"]
    code, out, _ = call(capsys, "gen-basis", "--j-range", "0", "--gamma-max", "1")
    basis = as_json(out)["basis"]
    assert len(basis) == 2
    assert MBF.from_json(basis[0]["mbf"]) == psi0()


def test_check_unitary(capsys):
    code, out, _ = call(capsys, "check-unitary", "--s", "1", "--gamma-angles=-1/8,1/8")
    assert code == 0 and as_json(out)["unitary"] is True
    code, out, _ = call(capsys, "check-unitary", "--s", "2", "--gamma-float", "0.1,0.3,0.77,0.123456789")
    assert code == 0 and as_json(out)["path"] == "float"


def test_check_eigen(capsys):
    code, out, _ = call(capsys, "check-eigen", "--symbol", "fractional:alpha=1", "--e", "1", "--j", "0", "--s", "0")
    assert code == 0
    data = as_json(out)
    assert data["criterion"] and data["direct"]
    assert data["eigenvalue"]["float"] == pytest.approx([2.0, 0.0])
    assert CycloScalar.from_json(data["eigenvalue"]["exact"]["c"]) == 2
    assert data["eigenvalue"]["exact"]["w"] == ["0/1", "0/1"]

    code, out, _ = call(capsys, "check-eigen", "--symbol", "two-valued-test", "--expect", "fail")
    assert code == 0
    assert as_json(out)["criterion"] is False
    code, _, _ = call(capsys, "check-eigen", "--symbol", "two-valued-test")
    assert code == 1


def test_complex_eigenvalue(capsys):
    code, out, _ = call(capsys, "check-eigen", "--symbol", "fractional:alpha=1,1", "--n", "2", "--e", "1,2", "--j=-1")
    assert code == 0
    w = as_json(out)["eigenvalue"]["exact"]["w"]
    assert w == ["0/1", "2/1"]


def test_pipeline(tmp_path, capsys):
    f = psi0().scale(3) + translate(psi0(), Fraction(1, 4))
    src = tmp_path / "f.json"
    src.write_text(json.dumps(f.to_json()))
    dec = tmp_path / "d.json"
    code, _, _ = call(capsys, "decompose", "-i", str(src), "-o", str(dec), "--j0", "-2")
    assert code == 0
    assert json.loads(dec.read_text())["round_trip"] is True
    code, out, _ = call(capsys, "reconstruct", "-i", str(dec))
    assert code == 0 and MBF.from_json(as_json(out)["mbf"]) == f
    code, out, _ = call(capsys, "apply-op", "-i", str(src), "--symbol", "fractional:alpha=2")
    assert code == 0
    parts = as_json(out)["result"]["parts"]
    assert len(parts) == 1
    assert MBF.from_json(parts[0]["mbf"]) == apply(parse_symbol("fractional:alpha=2"), f).to_mbf()


def test_decompose_with_psi_s(tmp_path, capsys):
    f = psi0() + translate(psi0(), Fraction(3, 4)).scale(2)
    src = tmp_path / "f.json"
    src.write_text(json.dumps(f.to_json()))
    code, out, _ = call(capsys, "decompose", "-i", str(src), "--s", "1", "--gamma-angles=-1/8,1/8")
    assert code == 0 and as_json(out)["round_trip"] is True


def test_enumerate_real(capsys):
    code, out, _ = call(capsys, "enumerate-real", "--s", "2", "--den", "4")
    assert code == 0
    data = as_json(out)
    assert {e["family"] for e in data["families"]} == {"equal", "opposite", "quarter"}
    assert all(e["real"] and e["unitary"] for e in data["families"])
    code, out, _ = call(capsys, "enumerate-real", "--s", "1", "--den", "8", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8 and float(rows[0]["alpha0"]) == 1.0


def test_config_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "job.toml"
    cfg.write_text('p = 3\n[check-orthonormal]\nj_range = "0"\ngamma_max = 1\n')
    code, out, _ = call(capsys, "check-orthonormal", "--config", str(cfg))
    assert code == 0 and as_json(out)["size"] == 6
    code, out, _ = call(capsys, "check-orthonormal", "--config", str(cfg), "--p", "2")
    assert code == 0 and as_json(out)["size"] == 2


def test_deterministic_output(capsys):
    argv = ["gen-basis", "--n", "2", "--j-range=-1..0", "--gamma-max", "1"]
    _, first, _ = call(capsys, *argv)
    _, second, _ = call(capsys, *argv)
    assert first == second


@pytest.mark.parametrize(
    "argv",
    [
        ["check-refinement", "--p", "4"],
        ["decompose"],
        ["decompose", "-i", "/nonexistent.json"],
        ["apply-op", "-i", "-", "--symbol", "bogus"],
        ["check-unitary", "--s", "2", "--gamma-angles", "0,0"],
        ["check-eigen", "--e", "3"],
        ["frobnicate"],
        ["check-refinement", "--config", "/nonexistent.toml"],
    ],
)
def test_usage_errors(argv, capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(psi0().to_json())))
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_non_lizorkin_input_is_usage_error(tmp_path, capsys):
    from qpw.wavelets import phi

    src = tmp_path / "phi.json"
    src.write_text(json.dumps(phi(2).to_json()))
    code, _, err = call(capsys, "apply-op", "-i", str(src))
    assert code == 2 and "error" in err


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "qpw", "check-refinement", "--p", "3"], capture_output=True, text=True, timeout=60
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["identity holds"] is True
