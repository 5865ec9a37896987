import io
import json
import subprocess
import sys

import pytest

from ccx import formats
from ccx.cli import main
from ccx.constructions import fixture, grid
from ccx.graphs import Graph, complete_bipartite, cycle_graph, is_isomorphic
from ccx.hypgraphs import contact_graph, crossing_graph
from ccx.median_core import median_violation


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def summary(out):
    return json.loads(out.strip().splitlines()[-1])


def test_gen_pipe_crossing_dot(tmp_path):
    gen = subprocess.run([sys.executable, "-m", "ccx.cli", "gen", "--kind", "grid", "--params", "2,3"],
                         capture_output=True, text=True, check=True)
    dot = tmp_path / "out.dot"
    subprocess.run([sys.executable, "-m", "ccx.cli", "crossing", "--dot", str(dot)],
                   input=gen.stdout, capture_output=True, text=True, check=True)
    text = dot.read_text()
    edges = [line.strip().rstrip(";").split(" -- ") for line in text.splitlines() if " -- " in line]
    g = Graph.from_edges(sorted({v for e in edges for v in e}), [tuple(e) for e in edges])
    assert is_isomorphic(g, complete_bipartite("ab", "xyz"))


def test_check_quasi_tree_tripod(tmp_path, capsys):
    f = tmp_path / "tripod.ccx"
    f.write_text(formats.dump_complex(fixture("tripod")))
    code, out, _ = run(["check", "quasi-tree", "-i", str(f)], capsys)
    assert code == 0
    assert "max root diameter 1; bottleneck delta <= 3/2" in out


def test_realize_five_cycle(tmp_path, capsys):
    g = tmp_path / "five_cycle_graph.json"
    g.write_text(formats.dump_graph(cycle_graph("abcde")))
    cc = tmp_path / "out.ccx"
    assert run(["realize", "-i", str(g), "-o", str(cc)], capsys)[0] == 0
    code, out, _ = run(["crossing", "-i", str(cc)], capsys)
    assert code == 0
    assert is_isomorphic(formats.load_graph(out), cycle_graph(range(5)))


def test_check_all_grid(tmp_path, capsys):
    f = tmp_path / "grid-3x3.ccx"
    f.write_text(formats.dump_complex(grid(3, 3)))
    code, out, _ = run(["check", "all", "-i", str(f)], capsys)
    assert code == 0 and summary(out)["passed"] is True


def test_check_median_c5_exit_one_with_replayable_witness(tmp_path, capsys):
    f = tmp_path / "c5.graph.json"
    c5 = cycle_graph(["a", "b", "c", "d", "e"])
    f.write_text(formats.dump_graph(c5))
    code, out, _ = run(["check", "median", "-i", str(f)], capsys)
    assert code == 1
    triple = summary(out)["results"][0]["witness"]["triple"]
    assert list(median_violation(c5)[:3]) == triple


def test_check_precursors_crossing_mode_on_ten_gon(tmp_path, capsys):
    f = tmp_path / "10gon.ccx"
    f.write_text(formats.dump_complex(fixture("10gon-5squares")))
    code, out, _ = run(["check", "precursors", "-i", str(f), "--mode", "crossing"], capsys)
    assert code == 1
    assert "FAIL" in out
    code, _, _ = run(["check", "precursors", "-i", str(f)], capsys)
    assert code == 0


def test_exit_codes(tmp_path, capsys):
    assert run(["gen", "--kind", "grid", "--params", "2"], capsys)[0] == 2
    assert run(["gen", "--kind", "grid", "--params", "4,4", "--cap", "10"], capsys)[0] == 3
    bad = tmp_path / "bad.ccx"
    bad.write_text("{not json")
    assert run(["skeleton", "-i", str(bad)], capsys)[0] == 2
    assert run(["grade", "-i", "tripod", "--base", "nine"], capsys)[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["check", "nonesuch", "-i", "tripod"])
    assert info.value.code == 2


def test_outputs_are_byte_identical(capsys):
    for argv in (["gen", "--kind", "random-wallspace", "--params", "16,8", "--seed", "5"],
                 ["analyze", "-i", "grid-2x3"],
                 ["contact", "-i", "10gon-5squares"],
                 ["root-tree", "-i", "tripod", "--base", "0"]):
        a = run(argv, capsys)
        b = run(argv, capsys)
        assert a == b and a[0] == 0


def test_cubulate_from_stdin(capsys, monkeypatch):
    ws = ('{"format": "ccx-wallspace-v1", "elements": ["c", "l1", "l2", "l3"], '
          '"walls": [{"plus": ["l1"]}, {"plus": ["l2"]}, {"plus": ["l3"]}]}')
    code, out, _ = run(["cubulate"], capsys, stdin=ws, monkeypatch=monkeypatch)
    assert code == 0
    X = formats.load_complex(out)
    assert len(X) == 4 and not crossing_graph(X).edges


def test_grade_and_root_tree(capsys):
    code, out, _ = run(["grade", "-i", "grid-2x3", "--base", "0"], capsys)
    assert code == 0
    doc = json.loads(out)
    grades = sorted(a["grade"] for a in doc["vertex_attrs"].values())
    assert grades == [0, 1, 1, 1, 1]
    code, out, _ = run(["root-tree", "-i", "path-4", "--base", "0"], capsys)
    assert len(formats.load_graph(out).edges) == 3


def test_overlay_dashes_osculations(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    assert run(["contact", "-i", "grid-2x3", "--dot", str(dot), "--overlay"], capsys)[0] == 0
    X = grid(2, 3)
    osc = len(contact_graph(X).edges - crossing_graph(X).edges)
    assert dot.read_text().count("style=dashed") == osc == 3  # 9 contacts, 6 crossings


def test_recubulate_and_analyze(tmp_path, capsys):
    out = tmp_path / "r.ccx"
    assert run(["recubulate", "-i", "tripod", "-o", str(out)], capsys)[0] == 0
    R = formats.load_complex(out.read_text())
    assert len(crossing_graph(R).edges) == 3
    code, text, _ = run(["analyze", "-i", "square"], capsys)
    rep = json.loads(text)
    assert rep["four_point_delta"] == "1" and rep["format"] == "ccx-report-v1"
