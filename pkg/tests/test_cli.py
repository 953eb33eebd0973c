import glob
import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmduality import FPModule, PolyRing, quotient_ring
from cmduality.cli import Runner, SessionParseError, ideal_statement, main, module_statement, parse_session, run_session
from cmduality.modules import present_vecs

from strategies import homogeneous

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")
HEADER = "ring 32003 x1 x2 x3 x4\n"
S4 = PolyRing.standard(4)


def transcript(path, seed=0):
    with open(path, encoding="utf-8") as fh:
        code, lines = run_session(fh.read(), seed)
    return "".join(line + "\n" for line in lines) + f"[exit {code}]\n"


def sessions():
    return sorted(glob.glob(os.path.join(GOLDEN, "*.session")))


@pytest.mark.parametrize("path", sessions(), ids=os.path.basename)
def test_golden_transcripts(path):
    with open(path[: -len(".session")] + ".out", encoding="utf-8") as fh:
        assert transcript(path) == fh.read()


def test_parse_examples():
    s = parse_session(HEADER + "ideal I = x1*x3, x1*x4, x2*x3, x2*x4\n")
    assert [st.kind for st in s.statements] == ["ring", "ideal"]
    assert [str(f) for f in s.statements[1].data["polys"]] == ["x1*x3", "x1*x4", "x2*x3", "x2*x4"]
    assert parse_session("").statements == []
    assert parse_session("# only a comment\n\n").statements == []


@pytest.mark.parametrize(
    "body, line, col, fragment",
    [
        ("ideal I = x1 + x2*x3", 2, 16, "inhomogeneous"),
        ("frobnicate S", 2, 1, "unknown"),
        ("invariants Q", 2, 12, "unbound"),
        ("ideal I = x1 +* x2", 2, None, ""),
        ("ideal S = x1", 2, None, ""),
    ],
)
def test_parse_errors_have_locations(body, line, col, fragment):
    with pytest.raises(SessionParseError) as info:
        parse_session(HEADER + body + "\n")
    err = info.value
    assert err.line == line
    if col is not None:
        assert err.column == col
    assert fragment in str(err)


def test_statements_need_a_ring():
    with pytest.raises(SessionParseError):
        parse_session("ideal I = x1\n")


def test_command_examples():
    code, lines = run_session(HEADER + "paper-example\ninvariants R\ncmfication R\niso _ B\n")
    assert code == 0
    assert "dim=2, depth=1, CM=no, finite_length=no" in lines
    assert lines[-1] == "yes"


def test_render_round_trip_examples():
    zero = FPModule.zero(S4)
    assert str(zero) == "generators: []\nrelations: []"
    k = quotient_ring(S4, S4.gens())
    assert str(k) == "generators: [0]\nrelations: x1; x2; x3; x4"


def _replay(text):
    runner = Runner(parse_session(HEADER + text))
    assert runner.run() == 0
    return runner


@given(st.lists(st.tuples(homogeneous(S4, degree=1, max_terms=2), homogeneous(S4, degree=2, max_terms=2)), max_size=3))
def test_module_render_parse_round_trip(pairs):
    rels = []
    for a, b in pairs:
        v = {(0, m): c for m, c in a.coeffs.items()}
        v.update({(1, m): c for m, c in b.coeffs.items()})
        if v:
            rels.append(v)
    M = present_vecs(S4, (0, -1), rels)
    runner = _replay(module_statement("M", M) + "\n")
    assert runner.module("M") == M


@given(st.lists(homogeneous(S4, max_deg=2, max_terms=3, allow_zero=False).filter(lambda f: f.degree > 0), min_size=1, max_size=3))
def test_ideal_render_parse_round_trip(polys):
    runner = _replay(ideal_statement("I", polys) + "\n")
    assert runner.module("I") == quotient_ring(S4, polys)
    assert [str(f) for f in runner.env["I"][1][0]] == [str(f) for f in polys]


def test_exit_codes_and_streams(tmp_path, capsys):
    ok = tmp_path / "ok.session"
    ok.write_text(HEADER + "invariants S\n")
    assert main([str(ok)]) == 0
    assert capsys.readouterr().out.endswith("dim=4, depth=4, CM=yes, finite_length=no\n")
    bad = tmp_path / "bad.session"
    bad.write_text(HEADER + "cmfication R\n")
    assert main([str(bad)]) == 2
    assert capsys.readouterr().err.startswith("parse error: line 2")
    err = tmp_path / "err.session"
    err.write_text(HEADER + "ext -1 S 0\n")
    assert main([str(err)]) == 1
    assert capsys.readouterr().out.splitlines()[-1].startswith("error: ext:")


def test_module_entry_point(tmp_path):
    f = tmp_path / "s.session"
    f.write_text(HEADER + "betti k\n")
    out = subprocess.run([sys.executable, "-m", "cmduality", str(f)], capture_output=True, text=True, check=True)
    assert out.stdout.splitlines()[-1] == "4: 1(4)"
