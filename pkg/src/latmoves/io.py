"""JSON formats shared by the CLI.

Polytope: {"dim": d, "vertices": [[...], ...]} with vertices sorted and
extreme. Trace: {"start": <polytope>, "moves": [{"kind": ..., "point": [...]}]}.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import LatticeMovesError, ParseError
from .kernel import Polytope, convex_hull
from .moves import DELETE, INSERT, Move, MoveTrace


def polytope_to_json(P: Polytope) -> dict:
    return {"dim": P.dim_ambient, "vertices": [list(v) for v in P.vertices]}


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    return x


def _points(raw, where: str, dim: int | None = None) -> list[tuple[int, ...]]:
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{where}: expected a non-empty list of points")
    out = []
    for i, p in enumerate(raw):
        if not isinstance(p, list):
            raise ParseError(f"{where}[{i}]: expected a list of integers")
        pt = tuple(_int(c, f"{where}[{i}]") for c in p)
        if dim is not None and len(pt) != dim:
            raise ParseError(f"{where}[{i}]: expected {dim} coordinates, got {len(pt)}")
        out.append(pt)
    if len({len(p) for p in out}) != 1:
        raise ParseError(f"{where}: points of different lengths")
    return out


def polytope_from_json(obj, canonicalize: bool = False) -> Polytope:
    if not isinstance(obj, dict):
        raise ParseError("polytope: expected a JSON object")
    for name in ("dim", "vertices"):
        if name not in obj:
            raise ParseError(f"polytope: missing field {name!r}")
    d = _int(obj["dim"], "dim")
    pts = _points(obj["vertices"], "vertices", d)
    try:
        P = convex_hull(pts, d)
    except LatticeMovesError as exc:
        raise ParseError(f"vertices: {exc}") from exc
    if not canonicalize:
        if pts != sorted(set(pts)):
            raise ParseError("vertices: not sorted lexicographically without repeats")
        if list(P.vertices) != pts:
            extra = sorted(set(pts) - P.vertex_set)
            raise ParseError(f"vertices: non-extreme points {extra}")
    return P


def points_from_json(obj) -> list[tuple[int, ...]]:
    """A bare list of points, {"points": [...]}, or a polytope object."""
    if isinstance(obj, dict):
        if "points" in obj:
            return _points(obj["points"], "points")
        if "vertices" in obj:
            d = _int(obj["dim"], "dim") if "dim" in obj else None
            return _points(obj["vertices"], "vertices", d)
        raise ParseError("expected a 'points' or 'vertices' field")
    return _points(obj, "points")


def trace_to_json(trace: MoveTrace) -> dict:
    return trace.to_json()


def trace_from_json(obj) -> MoveTrace:
    if not isinstance(obj, dict) or "start" not in obj or "moves" not in obj:
        raise ParseError("trace: expected fields 'start' and 'moves'")
    start = polytope_from_json(obj["start"])
    moves = []
    if not isinstance(obj["moves"], list):
        raise ParseError("moves: expected a list")
    for i, m in enumerate(obj["moves"]):
        if not isinstance(m, dict) or m.get("kind") not in (INSERT, DELETE):
            raise ParseError(f"moves[{i}].kind: expected 'insert' or 'delete'")
        pt = _points([m.get("point")], f"moves[{i}].point", start.dim_ambient)[0]
        moves.append(Move(m["kind"], pt))
    return MoveTrace(start, moves)


def read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ParseError(f"{path}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_polytope(path, canonicalize: bool = False) -> Polytope:
    return polytope_from_json(read_json(path), canonicalize)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))
