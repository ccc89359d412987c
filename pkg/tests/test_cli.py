"""Command line behaviour and exit codes."""

import json

import pytest

from newtondiag.cli import EXIT_CAP, EXIT_CONTRADICTION, EXIT_INPUT, EXIT_OK, main
from newtondiag.constructions import whitney
from newtondiag.grammar import format_polynomial
from newtondiag.diagram import NewtonDiagram, P, N


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_faran2(capsys):
    code, out, _ = run(capsys, "--json", "analyze", "x1^3 + 3 x1 x2 + x2^3")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["class"]["in_H"] is True
    assert data["diagram"]["nodes"] == 4
    assert data["diagram"]["sc"] == "2"


def test_analyze_homogeneous(capsys):
    code, out, _ = run(capsys, "--json", "analyze", "X0^3 + X1^3 + X2^3 - 3 X0 X1 X2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert (data["p_degree"], data["N"]) == (3, 4)


def test_analyze_trace(capsys):
    code, out, _ = run(capsys, "--json", "--trace", "analyze", "x1 + x2 + x1 x3 + x2 x3 + x3^2")
    assert code == EXIT_OK
    assert "receipts" in json.loads(out)


def test_syntax_error_exit(capsys):
    code, _, err = run(capsys, "analyze", "x1 + + x2")
    assert code == EXIT_INPUT
    assert "offset 5" in err


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "whitney", "--n", "3", "--d", "2")
    assert code == EXIT_OK
    assert out.strip() == format_polynomial(whitney(3, 2))
    code, out, _ = run(capsys, "--json", "generate", "dkr2d", "--d", "5")
    assert json.loads(out)["N"] == 4
    code, out, _ = run(capsys, "--json", "generate", "sharp3d", "--d", "3")
    # faran3 is symmetric in two variables, so its orbit has three members
    assert len(json.loads(out)["results"]) == 3


def test_generate_flag_guard(capsys):
    code, _, _ = run(capsys, "generate", "sharp3d", "--d", "6")
    assert code == EXIT_INPUT


def test_verify_bounds_poly(capsys):
    code, out, _ = run(capsys, "--json", "verify-bounds", "x1^3 + 3 x1 x2 + x2^3")
    assert code == EXIT_OK
    tags = {b["tag"]: b for b in json.loads(out)["bounds"]}
    assert tags["T1.1i"]["sharp"] is True


def test_verify_bounds_map(capsys):
    text = "map source=Q(2,0) target=Q(4,1) [ z0 z2^2 : +1 ; z1 z2^2 : +1 ; z0^3 : +1 ; z0^2 z1 : +1 ; z2^3 : -1 ; z0^2 z2 : -1 ]"
    code, out, _ = run(capsys, "--json", "verify-bounds", text)
    assert code == EXIT_OK
    assert all(b["status"] == "withheld" for b in json.loads(out)["bounds"])


def test_enumerate(capsys):
    code, out, _ = run(capsys, "--json", "enumerate", "T3.4", "--dmax", "3")
    assert code == EXIT_OK
    assert [c["min_nodes"] for c in json.loads(out)] == [3, 4, 4]


def test_enumerate_needs_flag(capsys):
    code, _, _ = run(capsys, "enumerate", "T5.2", "--dmax", "4")
    assert code == EXIT_INPUT


def test_render_file(tmp_path, capsys):
    D = NewtonDiagram(2, 3, {(0, 0): P, (2, 0): P, (0, 2): P, (1, 0): N, (0, 1): N, (1, 1): N})
    path = tmp_path / "cubic.json"
    path.write_text(D.to_json())
    code, out, _ = run(capsys, "render", str(path), "--format", "svg")
    assert code == EXIT_OK
    assert out.count('class="P"') == 3 and out.count('class="N"') == 3


def test_convert_both_ways(capsys):
    code, out, _ = run(capsys, "convert", "x1 + x2 + x1 x3 + x2 x3 + x3^2")
    assert code == EXIT_OK
    map_text = out.strip()
    assert map_text.startswith("map source=Q(3,0) target=Q(5,0)")
    code, out, _ = run(capsys, "--json", "convert", map_text)
    assert code == EXIT_OK
    assert json.loads(out)["is_quadric_map"] is True


@pytest.mark.parametrize("exc,want", [("contradiction", EXIT_CONTRADICTION), ("cap", EXIT_CAP)])
def test_exit_code_mapping(monkeypatch, capsys, exc, want):
    from newtondiag import cli
    from newtondiag.errors import CapExceeded, InternalContradiction

    err = InternalContradiction("x") if exc == "contradiction" else CapExceeded("x")

    def fail(args):
        raise err

    monkeypatch.setattr(cli, "cmd_generate", fail)
    assert main(["generate", "whitney"]) == want


def test_module_entry():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "newtondiag", "generate", "faran2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "x1^3" in res.stdout
