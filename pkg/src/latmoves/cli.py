"""Command-line entry point: ``latmoves <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import constructions as cons
from .errors import LatticeMovesError, ParseError, TooLarge
from .graph import (bfs_closure, bfs_distance, build_graph, connected_components,
                    enumerate_polytopes, export_graph)
from .io import dumps, load_polytope, points_from_json, polytope_to_json, read_json
from .kernel import convex_hull
from .moves import (deletable_vertices, insertable_cells_2d, insertable_points)
from .paths import simplex_to_corner_path
from .polygons import pentagon_pipeline
from .sampler import run_chain, tv_distance_to_uniform
from .verify import SUITES, stderr_progress, verify


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(dumps(obj))


def _filter(text: str | None):
    if text is None:
        return None
    try:
        return sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError as exc:
        raise UsageError(f"--vertices: expected comma separated integers, got {text!r}") from exc


def cmd_hull(args) -> int:
    pts = points_from_json(read_json(args.input))
    try:
        P = convex_hull(pts)
    except LatticeMovesError as exc:
        raise ParseError(f"points: {exc}") from exc
    _emit(polytope_to_json(P))
    return 0


def cmd_moves(args) -> int:
    P = load_polytope(args.input, args.canonicalize)
    wanted = [n for n in ("insertable", "deletable", "cells2d")
              if getattr(args, "list_" + n if n != "cells2d" else n)]
    if not wanted:
        wanted = ["insertable", "deletable"]
    out = {}
    if "insertable" in wanted:
        if args.box is None:
            raise UsageError("--list-insertable needs --box")
        out["insertable"] = [list(x) for x in insertable_points(P, args.box)]
    if "deletable" in wanted:
        out["deletable"] = [list(v) for v in deletable_vertices(P)]
    if "cells2d" in wanted:
        out["cells2d"] = [c.to_json() for c in insertable_cells_2d(P)]
    if len(out) == 1:
        _emit(next(iter(out.values())))
    else:
        _emit(out)
    return 0


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "corner":
        P = cons.corner_simplex(args.dim, args.box)
    elif kind == "pn":
        P = cons.pn_polygon(args.n)
    elif kind == "empty-simplex":
        P = cons.empty_simplex(args.k)
    elif kind == "saturating":
        P = cons.saturating_polytope(args.dim, args.k)
    elif kind == "product":
        P = cons.cartesian_product(load_polytope(args.A, args.canonicalize),
                                   load_polytope(args.B, args.canonicalize))
    elif kind == "cube":
        P = cons.unit_cube(args.dim)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(kind)
    _emit(polytope_to_json(P))
    return 0


def cmd_path(args) -> int:
    P = load_polytope(args.input, args.canonicalize)
    if args.kind == "simplex-to-corner":
        if args.box is None:
            raise UsageError("simplex-to-corner needs --box")
        trace = simplex_to_corner_path(P, args.box)
    else:
        trace = pentagon_pipeline(P)
    _emit(trace.to_json())
    return 0


def cmd_explore(args) -> int:
    filt = _filter(args.vertices)
    try:
        nodes = enumerate_polytopes(args.dim, args.box)
        G = build_graph(nodes, args.box, filt)
        source = "enumeration"
    except TooLarge:
        start = cons.corner_simplex(args.dim)
        G = bfs_closure(start, args.box, filt)
        source = "closure of the corner simplex"
    if args.out:
        export_graph(G, args.out, "jsonl")
    if args.dot:
        export_graph(G, args.dot, "dot")
    printed = False
    if args.components:
        comps = connected_components(G)
        word = "component" if len(comps) == 1 else "components"
        print(f"{len(comps)} {word}, {len(G)} nodes")
        printed = True
    if args.distance:
        A = load_polytope(args.distance[0], args.canonicalize)
        B = load_polytope(args.distance[1], args.canonicalize)
        dist = bfs_distance(G, A, B)
        print("unreachable" if dist is None else dist)
        printed = True
    if not printed:
        print(f"{len(G)} nodes, {G.n_edges()} edges ({source})")
    return 0


def cmd_sample(args) -> int:
    h = run_chain(args.dim, args.box, args.steps, args.burnin, args.seed)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            h.write_csv(fh)
    summary = {"states_visited": len(h.counts), "total": h.total, "seed": args.seed}
    try:
        support = len(enumerate_polytopes(args.dim, args.box))
        summary["support"] = support
        summary["tv_to_uniform"] = float(tv_distance_to_uniform(h, support))
    except TooLarge:
        pass
    _emit(summary)
    return 0


def cmd_verify(args) -> int:
    rep = verify(args.suite, stderr_progress)
    print(json.dumps(rep.to_json(), indent=2))
    print(rep.table())
    return 0 if rep.passed else 1


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latmoves", description="Moves on lattice polytopes.")
    sub = p.add_subparsers(dest="command", required=True)

    def canon(sp):
        sp.add_argument("--canonicalize", action="store_true",
                        help="accept unsorted or non-extreme vertex lists and take their hull")

    sp = sub.add_parser("hull", help="convex hull of a point list")
    sp.add_argument("--input", required=True, help="JSON list of points")
    sp.set_defaults(func=cmd_hull)

    sp = sub.add_parser("moves", help="insertable points and deletable vertices")
    sp.add_argument("--input", required=True, help="polytope JSON")
    sp.add_argument("--box", type=int, help="box size k for [0,k]^d")
    sp.add_argument("--list-insertable", action="store_true")
    sp.add_argument("--list-deletable", action="store_true")
    sp.add_argument("--cells2d", action="store_true", help="insertion cells of a polygon")
    canon(sp)
    sp.set_defaults(func=cmd_moves)

    sp = sub.add_parser("construct", help="build a named polytope")
    csub = sp.add_subparsers(dest="kind", required=True)
    c = csub.add_parser("corner", help="corner simplex")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--box", type=int, default=1)
    c = csub.add_parser("cube", help="unit cube")
    c.add_argument("--dim", type=int, required=True)
    c = csub.add_parser("pn", help="polygon with no insertable lattice point")
    c.add_argument("--n", type=int, required=True)
    c = csub.add_parser("empty-simplex", help="empty 4-simplex with parameter k")
    c.add_argument("--k", type=int, required=True)
    c = csub.add_parser("saturating", help="every box point insertable or deletable")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c = csub.add_parser("product", help="cartesian product of two polytopes")
    c.add_argument("A")
    c.add_argument("B")
    canon(c)
    sp.set_defaults(func=cmd_construct, canonicalize=False)

    sp = sub.add_parser("path", help="constructive move traces")
    sp.add_argument("kind", choices=["simplex-to-corner", "pentagon-pipeline"])
    sp.add_argument("input", help="polytope JSON")
    sp.add_argument("--box", type=int)
    canon(sp)
    sp.set_defaults(func=cmd_path)

    sp = sub.add_parser("explore", help="move graph inside [0,k]^d")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--box", type=int, required=True)
    sp.add_argument("--vertices", help="comma separated vertex counts to keep")
    sp.add_argument("--out", help="write the graph as JSONL")
    sp.add_argument("--dot", help="write the graph as DOT")
    sp.add_argument("--components", action="store_true")
    sp.add_argument("--distance", nargs=2, metavar=("A", "B"))
    canon(sp)
    sp.set_defaults(func=cmd_explore)

    sp = sub.add_parser("sample", help="Metropolis chain on polytopes in [0,k]^d")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--box", type=int, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--burnin", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--report", help="histogram CSV path")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=list(SUITES))
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, LatticeMovesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
