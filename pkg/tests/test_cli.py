import io
import json
import subprocess
import sys

import pytest

from hijac.cli import run
from hijac.resolve import load_graph, resolve_curve
from hijac.poly import parse_poly


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture()
def cusp_rg(tmp_path):
    path = tmp_path / "cusp.rg"
    code, _, _ = call("resolve", "-f", "x1^3 - x2^2", "--id", "cusp", "-o", str(path))
    assert code == 0
    return path


def test_jac_golden_output():
    code, out, _ = call("jac", "-f", "x1^3 - x2^2", "-d", "2", "-n", "2")
    assert code == 0
    assert out.splitlines()[3:] == [
        "[ 3*x1^2  -2*x2    3*x1       0     -1 ]",
        "[      0      0  3*x1^2   -2*x2      0 ]",
        "[      0      0       0  3*x1^2  -2*x2 ]",
    ]


def test_jac_json():
    code, out, _ = call("--json", "jac", "-f", "x1^3 - x2^2", "-n", "2", "--version", "f-diag")
    data = json.loads(out)
    assert data["shape"] == [3, 5] and data["matrix"][1][0] == "x1^3 - x2^2"


def test_ideal_and_nash_dim():
    assert call("ideal", "-f", "x1^3 - x2^2", "-d", "2", "-n", "1")[1].strip() == "J_1(x1^3 - x2^2) = <x1^2, x2>"
    code, out, _ = call("nash-dim", "-f", "x1^3 - x2^2", "-n", "2", "--json")
    assert code == 0 and json.loads(out)["dimension"] == "7"


def test_resolve_roundtrip_through_zeta(cusp_rg):
    G = load_graph(cusp_rg.read_text())
    assert G == resolve_curve(parse_poly("x1^3 - x2^2", 2), "cusp")
    code, out, _ = call("zeta", "--graph", str(cusp_rg), "--expand", "6", "-d", "2")
    assert code == 0
    assert "m=6: L^6*[Et(E0)] + L^6*[Et(E1)] + L^6*[Et(E2)] + L^7*[Et(E3)]" in out
    assert "MISMATCH" not in out


def test_separate_nearby_expand(cusp_rg, tmp_path):
    sep = tmp_path / "c7.rg"
    assert call("separate", "--graph", str(cusp_rg), "--m", "7", "-o", str(sep))[0] == 0
    assert len(load_graph(sep.read_text()).divisors) == 5
    code, out, _ = call("nearby", "--graph", str(cusp_rg))
    assert code == 0 and out.startswith("S_f = ")
    code, out, _ = call("expand", "--graph", str(sep), "--upto", "7", "--check-separating")
    assert code == 0 and "[X_7]" in out


def test_output_is_reproducible(cusp_rg):
    first = call("--json", "zeta", "--graph", str(cusp_rg), "--expand", "4")[1]
    second = call("--json", "zeta", "--graph", str(cusp_rg), "--expand", "4")[1]
    assert first == second
    a = call("resolve", "-f", "x2^2 - x1^5")[1]
    assert a == call("resolve", "-f", "x2^2 - x1^5")[1]


@pytest.mark.parametrize("argv, code", [
    (["check", "unit", "-f", "x1^3 - x2^2", "--u", "1 + x1", "-n", "2"], 0),
    (["check", "det-congruence", "-f", "x1^3 - x2^2", "--u", "1 + x1 + x2^2", "-n", "2"], 0),
    (["check", "contact", "-f", "x1^3 - x2^2", "--sigma", "x1 + x2^2;x2", "--u", "1 + x1", "-n", "2"], 0),
    (["check", "contact", "-f", "x1^3 - x2^2", "-g", "x1^3", "--sigma", "x1;x2", "-n", "1"], 1),
    (["check", "autoeq", "-f", "x1^3 - x2^2", "--sigma", "x1 + x2^2;x2", "-n", "2"], 0),
    (["check", "inclusion", "-f", "x1^2 + x2^3 + x3^3", "-n", "2"], 0),
    (["check", "weighted", "-f", "x1^3 - x2^2", "--weights", "2,3", "--u", "1 + x2", "-n", "2"], 0),
    (["check", "weighted", "-f", "x1^3 - x2^2 + x1*x2", "--weights", "2,3", "-n", "2"], 2),
    (["check", "autoeq", "-f", "x1^3 - x2^2", "-n", "2"], 2),
    (["check", "unit", "-f", "x1^3 - x2^2", "--u", "x1", "-n", "1"], 2),
    (["compare", "--f", "x1^3 - x2^2", "--g", "(1 + x1^6)*(x1^3 - x2^2)"], 0),
    (["compare", "--f", "x1^3 - x2^2", "--g", "x1^2 - x2^2"], 1),
    (["jac", "-f", "x1^^2"], 2),
    (["jac", "-f", "x1", "-n", "0"], 2),
    (["jac"], 2),
    (["frobnicate"], 2),
    (["zeta", "--graph", "/nonexistent/file.rg"], 2),
    (["resolve", "-f", "(x2^2 - 2*x1^2)^2 - x1^5"], 3),
    (["resolve", "-f", "x1 + x2 + x3"], 2),
    (["resolve", "-f", "x1 + 1"], 2),
])
def test_exit_status_contract(argv, code):
    assert call(*argv)[0] == code


def test_bad_graph_file(tmp_path):
    bad = tmp_path / "bad.rg"
    bad.write_text("divisor id=A N=1 nu=1 kind=elsewhere\n")
    code, _, err = call("nearby", "--graph", str(bad))
    assert code == 2 and "error" in err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hijac.cli", "ideal", "-f", "x1^3 - x2^2", "-n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "<x1^2, x2>" in proc.stdout
