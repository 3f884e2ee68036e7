import io
import subprocess
import sys

import pytest

from gbstools.bound import format_complex
from gbstools.cli import main
from gbstools.graph import format_graph, parse_graph

from complexes import WEDGE


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    texts = {
        "loop": "vertex v\nedge e1 v v 2 3\n",
        "seg": "vertex u\nvertex v\nvertex w\nedge e v w 1 3\nedge f v u 2 5\n",
        "bad": "vertex v\nedge e1 v v 2\n",
        "words": "word v: 0 e1 0\nword v: 4\n",
    }
    for name, text in texts.items():
        paths[name] = tmp_path / f"{name}.txt"
        paths[name].write_text(text)
    paths["wedge"] = tmp_path / "wedge.cx"
    paths["wedge"].write_text(format_complex(WEDGE))
    paths["dir"] = tmp_path
    return paths


def test_verify_family_table():
    code, out, _ = run("verify-family", "--kmax", 3)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["k", "vertices", "edges"]
    assert len(lines) == 4 and all(line.rstrip().endswith("pass") for line in lines[1:])


def test_collapse_loop_fails(files):
    code, out, err = run("collapse", files["loop"], "--edge", "e1")
    assert code == 1 and out == ""
    assert "loop" in err


def test_bound_on_wedge(files):
    code, out, _ = run("bound", files["wedge"], "--beta1", 2, "--porcelain")
    assert code == 0
    rows = dict(line.split("\t") for line in out.splitlines()[1:])
    assert rows["delta"] == "9" and rows["vertex_bound"] == "11" and rows["total_bound"] == "23"


def test_bound_beta1_from_complex(files):
    code, out, _ = run("bound", files["wedge"], "--beta1-from-complex")
    assert code == 0 and "beta1 source" in out


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["verify-family"], ["verify-family", "--kmax", "x"],
                                  ["bound", "k.cx"], ["verify-family", "--kmax", "2", "--bogus"]])
def test_usage_errors(argv, capsys):
    code, _, _ = run(*argv)
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_parse_error_names_file_and_line(files):
    code, _, err = run("validate", files["bad"])
    assert code == 1
    assert f"{files['bad']}:2:" in err


def test_validate(files):
    assert run("validate", files["loop"])[:2] == (0, "valid\n")


def test_missing_file(files):
    code, _, err = run("validate", files["dir"] / "nope.txt")
    assert code == 1 and "nope.txt" in err


def test_collapse_and_expand_round_trip(files):
    log = files["dir"] / "c.log"
    code, out, _ = run("collapse", files["seg"], "--edge", "e", "--log", log)
    assert code == 0
    collapsed = files["dir"] / "c.txt"
    collapsed.write_text(out)
    code, back, _ = run("expand", collapsed, "--vertex", "w", "--ends", "f", "--divisor", 3,
                        "--new-vertex", "v", "--new-edge", "e")
    assert code == 0
    assert parse_graph(back) == parse_graph(files["seg"].read_text())
    assert run("replay", files["seg"], log)[1] == out


def test_reduce_log_replays_byte_for_byte(files):
    log = files["dir"] / "r.log"
    code, out, _ = run("reduce", files["seg"], "--log", log)
    assert code == 0
    assert run("replay", files["seg"], log)[1] == out
    assert len(parse_graph(out).vertices) == 2


def test_subdivide_then_essential(files):
    code, out, _ = run("subdivide", files["loop"], "--edge", "e1")
    sub = files["dir"] / "s.txt"
    sub.write_text(out)
    code, out, _ = run("essential", sub, "--porcelain")
    rows = dict(line.split("\t") for line in out.splitlines()[1:])
    assert rows == {"v": "essential", "x": "inessential"}


def test_word_table(files):
    code, out, _ = run("word", files["loop"], files["words"], "--porcelain")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    assert [r[2:] for r in rows] == [["hyperbolic", "1"], ["elliptic", "0"]]
    code, out, _ = run("word", files["loop"], "--word", "word v: 0 e1 3 ~e1 0", "--porcelain")
    assert out.splitlines()[1].split("\t")[1] == "word v: 2"


def test_ball_and_fold(files):
    code, out, _ = run("ball", files["loop"], "--base", "v", "--radius", 1)
    assert code == 0 and len(out.splitlines()) == 1 + 1 + 5
    code, out, _ = run("fold-type", files["loop"], "--base", "v", "--radius", 2,
                       "--edge1", ".", "e1:0", "--edge2", ".", "e1:1")
    assert (code, out) == (0, "IIB\n")


def test_ball_cap_from_environment(files, monkeypatch):
    monkeypatch.setenv("GBS_BALL_CAP", "10")
    code, _, err = run("ball", files["loop"], "--base", "v", "--radius", 3)
    assert code == 1 and "GBS_BALL_CAP" in err


def test_chain_and_check_2gen():
    code, out, _ = run("chain", "--q", "5,2", "--r", "3,5")
    g = parse_graph(out)
    assert code == 0 and len(g.vertices) == 3
    assert out == format_graph(g)
    assert run("check-2gen", "--q", "2,2", "--r", "2,3")[:2] == (0, "false\n")
    assert run("check-2gen", "--q", "2,2", "--r", "3,3")[:2] == (0, "true\n")
    assert run("check-2gen", "--q", "1,2", "--r", "3,3")[0] == 1


def test_output_is_deterministic(files):
    assert run("verify-family", "--kmax", 4) == run("verify-family", "--kmax", 4)
    assert run("ball", files["seg"], "--base", "v", "--radius", 3) == \
        run("ball", files["seg"], "--base", "v", "--radius", 3)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gbstools", "verify-family", "--kmax", "2", "--porcelain"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].split("\t")[0] == "k"
