import csv
import json
import subprocess
import sys

import pytest

from latmoves.cli import main
from latmoves.errors import ParseError
from latmoves.io import polytope_from_json, polytope_to_json, trace_from_json
from latmoves.constructions import pn_polygon
from latmoves.paths import simplex_to_corner_path
from latmoves.kernel import convex_hull


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


TRI = {"dim": 2, "vertices": [[0, 0], [0, 1], [1, 0]]}
SQ = {"dim": 2, "vertices": [[0, 0], [0, 1], [1, 0], [1, 1]]}


def test_polytope_json_round_trip():
    P = pn_polygon(7)
    assert polytope_from_json(polytope_to_json(P)) == P


@pytest.mark.parametrize("obj,field", [
    ({"vertices": [[0, 0]]}, "dim"),
    ({"dim": 2}, "vertices"),
    ({"dim": 2, "vertices": [[0, 0], [1, "x"], [0, 1]]}, "vertices[1]"),
    ({"dim": 2, "vertices": [[1, 0], [0, 0], [0, 1]]}, "vertices"),
    ({"dim": 2, "vertices": [[0, 0], [0, 2], [1, 1], [2, 0]]}, "vertices"),
    ({"dim": "2", "vertices": [[0, 0]]}, "dim"),
])
def test_polytope_json_rejects(obj, field):
    with pytest.raises(ParseError, match=field.replace("[", r"\[")):
        polytope_from_json(obj)


def test_canonicalize_flag():
    obj = {"dim": 2, "vertices": [[1, 0], [0, 0], [0, 2], [1, 1], [2, 0], [0, 2]]}
    P = polytope_from_json(obj, canonicalize=True)
    assert P.vertices == ((0, 0), (0, 2), (2, 0))


def test_trace_json_round_trip():
    t = simplex_to_corner_path(convex_hull([(0, 1), (2, 0), (1, 2)]), 2)
    back = trace_from_json(json.loads(json.dumps(t.to_json())))
    assert back.moves == t.moves and back.start == t.start


def test_hull(tmp_path, capsys):
    f = write(tmp_path, "pts.json", [[0, 0], [2, 0], [0, 2], [1, 1], [2, 2]])
    code, out, _ = run(capsys, "hull", "--input", f)
    assert code == 0
    assert json.loads(out) == {"dim": 2, "vertices": [[0, 0], [0, 2], [2, 0], [2, 2]]}


def test_moves(tmp_path, capsys):
    f = write(tmp_path, "t.json", TRI)
    code, out, _ = run(capsys, "moves", "--input", f, "--box", "1", "--list-insertable")
    assert code == 0 and json.loads(out) == [[1, 1]]
    code, out, _ = run(capsys, "moves", "--input", f, "--list-deletable")
    assert json.loads(out) == []
    code, out, _ = run(capsys, "moves", "--input", write(tmp_path, "s.json", SQ), "--cells2d")
    cells = json.loads(out)
    assert len(cells) == 4 and all(c["kind"] == "strip" for c in cells)


def test_construct(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "corner", "--dim", "3", "--box", "2")
    assert code == 0 and json.loads(out)["vertices"] == [[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]]
    code, out, _ = run(capsys, "construct", "pn", "--n", "6")
    assert len(json.loads(out)["vertices"]) == 6
    code, out, _ = run(capsys, "construct", "empty-simplex", "--k", "2")
    assert json.loads(out)["vertices"] == [[0, 0, 1], [0, 1, 2], [1, 2, 0], [2, 0, 0]]
    code, out, _ = run(capsys, "construct", "saturating", "--dim", "6", "--k", "2")
    assert len(json.loads(out)["vertices"]) == 16
    seg = write(tmp_path, "seg.json", {"dim": 1, "vertices": [[0], [1]]})
    code, out, _ = run(capsys, "construct", "product", seg, seg)
    assert json.loads(out) == SQ
    code, _, err = run(capsys, "construct", "pn", "--n", "5")
    assert code == 2 and "n = 5" in err


def test_path(tmp_path, capsys):
    f = write(tmp_path, "s.json", {"dim": 2, "vertices": [[0, 1], [1, 2], [2, 0]]})
    code, out, _ = run(capsys, "path", "simplex-to-corner", f, "--box", "2")
    t = trace_from_json(json.loads(out))
    assert code == 0 and t.end().vertices == ((0, 0), (0, 1), (1, 0))
    f = write(tmp_path, "p.json", {"dim": 2, "vertices": [[0, 0], [1, 0], [1, 3], [2, 1], [2, 2]]})
    code, out, _ = run(capsys, "path", "pentagon-pipeline", f)
    assert code == 0 and json.loads(out)["moves"]


def test_explore(tmp_path, capsys):
    code, out, _ = run(capsys, "explore", "--dim", "2", "--box", "1", "--components")
    assert code == 0 and out.strip() == "1 component, 5 nodes"
    g, d = tmp_path / "g.jsonl", tmp_path / "g.dot"
    code, out, _ = run(capsys, "explore", "--dim", "2", "--box", "1", "--vertices", "3,4",
                       "--out", str(g), "--dot", str(d))
    assert len(g.read_text().splitlines()) == 5
    assert d.read_text().count(" -- ") == 4
    a = write(tmp_path, "a.json", TRI)
    b = write(tmp_path, "b.json", {"dim": 2, "vertices": [[0, 1], [1, 0], [1, 1]]})
    code, out, _ = run(capsys, "explore", "--dim", "2", "--box", "1", "--distance", a, b)
    assert out.strip() == "2"
    code, _, err = run(capsys, "explore", "--dim", "2", "--box", "1", "--vertices", "x")
    assert code == 2


def test_sample(tmp_path, capsys):
    rep = tmp_path / "h.csv"
    code, out, _ = run(capsys, "sample", "--dim", "2", "--box", "1", "--steps", "5000",
                       "--burnin", "100", "--seed", "1", "--report", str(rep))
    assert code == 0 and json.loads(out)["total"] == 4900
    rows = list(csv.reader(rep.open()))
    assert rows[0] == ["canonical_key", "count"]
    assert sum(int(r[1]) for r in rows[1:]) == 4900
    first = rep.read_bytes()
    run(capsys, "sample", "--dim", "2", "--box", "1", "--steps", "5000",
        "--burnin", "100", "--seed", "1", "--report", str(rep))
    assert rep.read_bytes() == first


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "pn-family")
    assert code == 0 and '"passed": true' in out and "PASS" in out
    code, out, _ = run(capsys, "verify", "products")
    assert code == 1 and "FAIL" in out
    code, _, _ = run(capsys, "verify", "nope")
    assert code == 2


@pytest.mark.parametrize("argv", [[], ["--bogus"], ["moves"], ["hull", "--input"]])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


@pytest.mark.parametrize("cmd", ["hull", "moves", "construct", "path", "explore", "sample", "verify"])
def test_help(cmd, capsys):
    assert main([cmd, "--help"]) == 0
    assert "usage" in capsys.readouterr().out


def test_malformed_json_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "moves", "--input", str(p), "--box", "1")
    assert code == 2 and "invalid JSON" in err
    f = write(tmp_path, "b.json", {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]})
    code, _, err = run(capsys, "moves", "--input", f, "--box", "1")
    assert code == 2 and "vertices" in err
    code, out, _ = run(capsys, "moves", "--input", f, "--box", "1", "--canonicalize")
    assert code == 0


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "latmoves.cli", "explore", "--dim", "2",
                          "--box", "1", "--components"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "1 component, 5 nodes"
