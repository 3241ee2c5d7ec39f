import json
import subprocess
import sys

import pytest

from galkinlab.cli import main


def run(capsys, *args):
    status = main(list(args))
    out, err = capsys.readouterr()
    return status, out, err


def test_count(capsys):
    assert run(capsys, "count", "--n", "3", "--method", "both") == (0, "10 10\n", "")
    assert run(capsys, "count", "--n", "0") == (0, "1\n", "")
    assert run(capsys, "count", "--n", "4", "--method", "both") == (0, "20 20\n", "")
    assert run(capsys, "count", "--n", "9", "--method", "convolution") == (0, "300\n", "")
    status, out, _ = run(capsys, "count", "--n", "5", "--method", "both", "--json")
    assert status == 0 and json.loads(out) == {"n": 5, "eq31": 36, "convolution": 36}


def test_count_rejects_negative(capsys):
    status, _, err = run(capsys, "count", "--n", "-1")
    assert status == 2 and "nonnegative" in err


def test_enumerate(capsys):
    status, out, _ = run(capsys, "enumerate", "--q", "2", "--n", "1")
    assert status == 0 and out == "q=2;1 ()\nq=2;1 (1,0)\n"
    assert run(capsys, "enumerate", "--q", "3", "--n", "0")[1] == "q=3; ()\n"
    status, out, _ = run(capsys, "enumerate", "--q", "2", "--n", "2")
    assert out == "q=2;2 ()\nq=2;2 (1,0)\nq=2;2 (1,1)\nq=2;1^2 ()\nq=2;1^2 (1,0)\n"
    status, _, err = run(capsys, "enumerate", "--q", "4", "--n", "2")
    assert status == 2 and "prime" in err


def test_canon(capsys):
    assert run(capsys, "canon", "--shape", "q=2;1,2", "--point", "1;1") == (0, "(2,0)\n", "")
    assert run(capsys, "canon", "--shape", "q=2;1,2", "--point", "0;0") == (0, "()\n", "")
    status, out, _ = run(capsys, "canon", "--shape", "q=2;1,3", "--point", "1;2", "--verify")
    assert (status, out) == (0, "(1,0)(2,1)\nverified\n")


def test_galkin_check_color_iso(capsys, tmp_path):
    r3 = tmp_path / "r3.tbl"
    assert run(capsys, "galkin", "--shape", "q=3;", "--point", "", "--out", str(r3))[0] == 0
    assert r3.read_text() == "3\n0 2 1\n2 1 0\n1 0 2\n"
    assert run(capsys, "check", "--table", str(r3)) == (0, "PASS\n", "")
    assert run(capsys, "color", "--knot", "trefoil", "--table", str(r3)) == (0, "9\n", "")
    assert run(capsys, "color", "--knot", "figure_eight", "--table", str(r3)) == (0, "3\n", "")

    diagram = tmp_path / "tref.knot"
    diagram.write_text("arcs 3\n+ 2 0 1\n+ 0 1 2\n+ 1 2 0\n")
    assert run(capsys, "color", "--diagram", str(diagram), "--table", str(r3)) == (0, "9\n", "")

    a, b, c = tmp_path / "a.json", tmp_path / "b.tbl", tmp_path / "c.tbl"
    run(capsys, "galkin", "--shape", "q=3;1", "--point", "1", "--out", str(a))
    run(capsys, "galkin", "--shape", "q=3;1", "--point", "2", "--out", str(b))
    run(capsys, "galkin", "--shape", "q=3;1", "--point", "0", "--out", str(c))
    assert json.loads(a.read_text())["size"] == 9
    status, out, _ = run(capsys, "iso", "--table1", str(a), "--table2", str(b))
    assert status == 0 and len(out.split()) == 9
    assert run(capsys, "iso", "--table1", str(a), "--table2", str(c)) == (0, "none\n", "")


def test_galkin_to_stdout(capsys):
    status, out, _ = run(capsys, "galkin", "--shape", "q=2;1", "--point", "1")
    assert status == 0 and out.splitlines()[0] == "6"
    status, out, _ = run(capsys, "galkin", "--shape", "q=2;1", "--point", "1", "--json")
    assert json.loads(out)["labels"][1] == [0, [1]]


def test_check_failure(capsys, tmp_path):
    bad = tmp_path / "bad.tbl"
    bad.write_text("2\n0 1\n1 0\n")
    assert run(capsys, "check", "--table", str(bad)) == (1, "FAIL axiom (i) x=1\n", "")
    bad.write_text("2\n0 1\n")
    status, _, err = run(capsys, "check", "--table", str(bad))
    assert status == 2 and err.startswith("error:")


def test_color_needs_one_source(capsys, tmp_path):
    status, _, err = run(capsys, "color", "--table", str(tmp_path / "x"))
    assert status == 2


def test_color_reports_diagram_errors(capsys, tmp_path):
    r3 = tmp_path / "r3.tbl"
    r3.write_text("3\n0 2 1\n2 1 0\n1 0 2\n")
    bad = tmp_path / "bad.knot"
    bad.write_text("arcs 2\n+ 0 0 5\n")
    status, _, err = run(capsys, "color", "--diagram", str(bad), "--table", str(r3))
    assert status == 2 and "arc 5" in err


@pytest.mark.parametrize("n,count", list(enumerate((1, 2, 5, 10, 20, 36, 65, 110, 185))))
def test_bijection(capsys, n, count):
    assert run(capsys, "bijection", "--n", str(n)) == (0, f"OK {count}\n", "")


def test_bijection_example_trace(capsys):
    status, out, _ = run(capsys, "bijection", "--n", "20", "--x", "1,3,5", "--y", "1,2,4", "--lam", "1,1,2")
    assert status == 0
    lines = out.splitlines()
    assert lines[:11] == [
        "n = 20, m = 16",
        "x = (1,3,5)",
        "y = (1,2,4)",
        "lambda = (1,1,2)",
        "mu = (1,1,2,2,5,9)",
        "(e) = (1,2,5,9)",
        "(n) = (2,2,1,1)",
        "(i) = (2,3,4)",
        "(f) = (0,2,4)",
        "sequence = (2,0)(3,2)(4,4)",
        lines[10],
    ]
    assert lines[10].startswith("note: f_s = x_s - 1") and "(1,3,5)" in lines[10]
    assert lines[11] == "round trip OK"


def test_bijection_trace_weight_mismatch(capsys):
    status, _, err = run(capsys, "bijection", "--n", "19", "--x", "1,3,5", "--y", "1,2,4", "--lam", "1,1,2")
    assert status == 2 and "weight 20" in err


def test_deterministic_output(capsys):
    for args in (["enumerate", "--q", "3", "--n", "4"], ["count", "--n", "12", "--method", "both"]):
        first = run(capsys, *args)
        assert run(capsys, *args) == first


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "galkinlab", "count", "--n", "3", "--method", "both"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert result.stdout == "10 10\n"
