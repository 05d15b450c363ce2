import pytest

from pbquad.cli import main
from pbquad.core import AuxAllocator
from pbquad.methods import METHODS
from pbquad.pbfio import emit_pbf, parse_function
from pbquad.termwise import quadratize_negative_term

from conftest import P


@pytest.fixture
def files(tmp_path):
    def write(name, f):
        path = tmp_path / name
        path.write_text(emit_pbf(f) if not isinstance(f, str) else f)
        return str(path)

    return write


def test_verify_exit_codes(files, capsys):
    f = files("f.pbf", P({(1, 2, 3): -1}))
    g = files("g.pbf", quadratize_negative_term(1, (1, 2, 3), AuxAllocator(3)).g)
    assert main(["verify", f, g, "--aux", "1"]) == 0
    assert "verified" in capsys.readouterr().out
    f2 = files("f2.pbf", P({(1, 2, 3): 1}))
    g2 = files("g2.pbf", P({(1, 2): 1}, n=3))
    assert main(["verify", f2, g2, "--aux", "0"]) == 1
    assert main(["verify", f2, g2, "--aux", "1"]) == 3


def test_minimize(files, capsys):
    g = files("g.pbf", P({(1,): 2, (1, 2): -3}))
    assert main(["minimize", g]) == 0
    assert capsys.readouterr().out == "value -1\nargmin 1 1\n"
    assert main(["minimize", g, "--engine", "flow"]) == 0
    assert capsys.readouterr().out == "value -1\nargmin 1 1\n"
    bad = files("bad.pbf", P({(1, 2): 1}))
    assert main(["minimize", bad, "--engine", "flow"]) == 3
    big = files("big.pbf", P({(1,): 1}, n=30))
    assert main(["minimize", big]) == 4


def test_parse_error_exit(files):
    assert main(["stats", files("x.pbf", "1 1 2\n")]) == 2
    assert main(["stats", "/nonexistent/file.pbf"]) == 2


def test_stats(files, capsys):
    assert main(["stats", files("f.pbf", P({(1, 2, 3): -1, (1,): 2}))]) == 0
    assert capsys.readouterr().out == "variables 3\ndegree 3\nterms 2\nsubmodular yes\n"
    assert main(["stats", files("q.pbf", P({(1, 2): 1}))]) == 0
    assert capsys.readouterr().out.endswith("submodular no\n")


@pytest.mark.parametrize("method", METHODS)
def test_quadratize_then_verify(files, tmp_path, method, capsys):
    f = P({(1, 2, 3): -2, (1, 2, 4): -1, (2, 3, 4, 5): -3, (1, 5): 4})
    if method != "kzfd":
        f = f + P({(1, 3, 4, 5): 2, (2, 4, 5): 1})
    src = files("f.pbf", f)
    out = str(tmp_path / "g.pbf")
    assert main(["quadratize", "--method", method, src, "-o", out, "--report"]) == 0
    report = capsys.readouterr().out
    g = parse_function(open(out).read())
    assert g.degree <= 2
    aux = g.n_vars - f.n_vars
    assert f"aux_count {aux}" in report
    assert main(["verify", src, out, "--aux", str(aux)]) == 0


def test_kzfd_rejects_positive_terms(files):
    assert main(["quadratize", "--method", "kzfd", files("f.pbf", P({(1, 2, 3): 1}))]) == 3


def test_compare_rows_match_formulas(files, capsys):
    d = 6
    assert main(["compare", files("t.pbf", P({tuple(range(1, d + 1)): 1}))]) == 0
    rows = {line.split()[0]: line.split() for line in capsys.readouterr().out.splitlines()[1:]}
    assert rows["kzfd"][1:] == ["n/a"] * 4
    assert rows["chain"][1] == str(d - 2) and rows["chain"][3] == str(d - 1)
    assert rows["ishikawa"][1] == str((d - 1) // 2) and rows["ishikawa"][3] == str(d * (d - 1) // 2)


def test_gen_star(files, tmp_path, capsys):
    edges = files("e.txt", "# path\n1 2\n2 3\n")
    out = str(tmp_path / "star.pbf")
    assert main(["gen", "--family", "star", "--edges", edges, "-o", out]) == 0
    assert parse_function(open(out).read()) == P({(1, 2, 4): 1, (2, 3, 4): 1})
    assert main(["gen", "--family", "star", "--edges", files("bad.txt", "1 x\n")]) == 2
