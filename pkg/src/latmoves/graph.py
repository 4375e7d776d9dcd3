"""The move graph on lattice polytopes inside [0,k]^d.

Nodes are concrete vertex sets (no quotient by symmetries), keyed by their
canonical string. Two independent routes lead to the node set: a subset
scan of the box points (``enumerate_polytopes``) and a breadth-first
closure under single moves (``bfs_closure``).
"""
from __future__ import annotations

import hashlib
import json
import os
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

from .errors import InvalidInput, OutOfBox, ParseError, TooLarge, UnknownNode
from .kernel import Polytope, check_dim, orient2d, rank, sub
from .moves import box_points, in_box, neighbors_in_box

SUBSET_BUDGET = 16


def _filter_set(vertex_filter) -> frozenset[int] | None:
    return None if vertex_filter is None else frozenset(int(n) for n in vertex_filter)


# --------------------------------------------------------------------------
# enumeration


def _convex_position_2d(pts: list) -> bool:
    # monotone chain on a sorted list; collinear middle points are dropped
    if len(pts) <= 2:
        return True
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and orient2d(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient2d(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return len(lower) + len(upper) - 2 == len(pts)


def enumerate_polytopes(d: int, k: int, vertex_filter=None) -> list[Polytope]:
    """All full-dimensional lattice polytopes with vertices in [0,k]^d.

    Scans subsets of the (k+1)^d box points, keeping those in convex
    position. Convex position is inherited by subsets, so the scan is a
    depth-first search that stops extending a set once it fails.
    """
    check_dim(d)
    if d < 2 or k < 1:
        raise InvalidInput("need d >= 2 and k >= 1")
    if (k + 1) ** d > SUBSET_BUDGET:
        raise TooLarge(f"(k+1)^d = {(k + 1) ** d} box points exceeds the subset budget {SUBSET_BUDGET}")
    pts = sorted(box_points(d, k))
    if k == 1:
        convex = lambda s: True  # noqa: E731  (cube vertices)
    elif d == 2:
        convex = _convex_position_2d
    else:  # pragma: no cover - excluded by the budget
        raise TooLarge("subset scan only supports k = 1 or d = 2")
    allowed = _filter_set(vertex_filter)
    out: list[Polytope] = []

    def full_dim(s):
        return rank([sub(p, s[0]) for p in s[1:]]) == d

    def grow(chosen: list, start: int):
        if len(chosen) >= d + 1 and (allowed is None or len(chosen) in allowed) and full_dim(chosen):
            out.append(Polytope(list(chosen), d))
        for j in range(start, len(pts)):
            chosen.append(pts[j])
            if convex(chosen):
                grow(chosen, j + 1)
            chosen.pop()

    grow([], 0)
    out.sort(key=lambda P: P.key())
    return out


# --------------------------------------------------------------------------
# graphs


@dataclass
class MoveGraph:
    nodes: dict[str, Polytope]
    adjacency: dict[str, list[str]]
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.nodes)

    def n_edges(self) -> int:
        return sum(len(v) for v in self.adjacency.values()) // 2

    def edges(self) -> Iterable[tuple[str, str]]:
        for a in sorted(self.adjacency):
            for b in self.adjacency[a]:
                if a < b:
                    yield a, b

    def degree(self, key: str) -> int:
        return len(self.adjacency[key])

    def __eq__(self, other):
        return (isinstance(other, MoveGraph) and self.adjacency == other.adjacency
                and set(self.nodes) == set(other.nodes))


def build_graph(nodes: Iterable[Polytope], k: int, vertex_filter=None) -> MoveGraph:
    """Induced move graph on the given nodes."""
    allowed = _filter_set(vertex_filter)
    node_map = {}
    for P in nodes:
        if not in_box(P, k):
            raise OutOfBox(f"{P.key()} not inside [0,{k}]^{P.dim_ambient}")
        if allowed is None or P.n_vertices in allowed:
            node_map[P.key()] = P
    adj = {}
    for key, P in node_map.items():
        nb = {Q.key() for _, Q in neighbors_in_box(P, k, allowed)}
        adj[key] = sorted(q for q in nb if q in node_map)
    d = next(iter(node_map.values())).dim_ambient if node_map else None
    return MoveGraph(node_map, adj, _meta(d, k, allowed))


def _meta(d, k, allowed) -> dict:
    return {"d": d, "k": k, "vertex_filter": None if allowed is None else sorted(allowed)}


def bfs_closure(start: Polytope, k: int, vertex_filter=None) -> MoveGraph:
    """Everything reachable from ``start`` by moves inside [0,k]^d.

    The frontier is expanded in canonical key order so the result, and the
    order of discovery, are reproducible.
    """
    allowed = _filter_set(vertex_filter)
    if allowed is not None and start.n_vertices not in allowed:
        raise InvalidInput("start polytope excluded by the vertex filter")
    nodes = {start.key(): start}
    adj: dict[str, list[str]] = {}
    queue = deque([start.key()])
    while queue:
        key = queue.popleft()
        nbrs = {}
        for _, Q in neighbors_in_box(nodes[key], k, allowed):
            nbrs[Q.key()] = Q
        adj[key] = sorted(nbrs)
        for q in adj[key]:
            if q not in nodes:
                nodes[q] = nbrs[q]
                queue.append(q)
    return MoveGraph(nodes, adj, _meta(start.dim_ambient, k, allowed))


def connected_components(G: MoveGraph) -> list[list[str]]:
    seen: set[str] = set()
    comps = []
    for key in sorted(G.nodes):
        if key in seen:
            continue
        comp = [key]
        seen.add(key)
        queue = deque([key])
        while queue:
            for b in G.adjacency[queue.popleft()]:
                if b not in seen:
                    seen.add(b)
                    comp.append(b)
                    queue.append(b)
        comps.append(sorted(comp))
    return comps


def _node_key(G: MoveGraph, P) -> str:
    key = P if isinstance(P, str) else P.key()
    if key not in G.nodes:
        raise UnknownNode(key)
    return key


def bfs_distance(G: MoveGraph, P, Q) -> int | None:
    """Shortest move count between two nodes, or None when unreachable."""
    a, b = _node_key(G, P), _node_key(G, Q)
    dist = {a: 0}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        if cur == b:
            return dist[cur]
        for nxt in G.adjacency[cur]:
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return None


# --------------------------------------------------------------------------
# persistence


def write_jsonl(G: MoveGraph, fh: TextIO) -> None:
    for key in sorted(G.nodes):
        rec = {"key": key,
               "vertices": [list(v) for v in G.nodes[key].vertices],
               "neighbors": G.adjacency[key]}
        fh.write(json.dumps(rec, separators=(",", ":")) + "\n")


def write_dot(G: MoveGraph, fh: TextIO) -> None:
    fh.write("graph lambda {\n")
    for key in sorted(G.nodes):
        fh.write(f'  "{key}";\n')
    for a, b in G.edges():
        fh.write(f'  "{a}" -- "{b}";\n')
    fh.write("}\n")


def export_graph(G: MoveGraph, path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("dot" if path.suffix == ".dot" else "jsonl")
    with open(path, "w") as fh:
        if fmt == "jsonl":
            write_jsonl(G, fh)
        elif fmt == "dot":
            write_dot(G, fh)
        else:
            raise InvalidInput(f"unknown graph format {fmt!r}")


def read_jsonl(fh: TextIO, k: int | None = None) -> MoveGraph:
    nodes, adj = {}, {}
    for lineno, line in enumerate(fh, 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            key = rec["key"]
            verts = [tuple(int(c) for c in v) for v in rec["vertices"]]
            nbrs = [str(n) for n in rec["neighbors"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if not verts:
            raise ParseError(f"line {lineno}: empty vertex list")
        P = Polytope(verts, len(verts[0]))
        if P.key() != key:
            raise ParseError(f"line {lineno}: key does not match vertices")
        nodes[key] = P
        adj[key] = sorted(nbrs)
    for key, nbrs in adj.items():
        for n in nbrs:
            if n not in adj or key not in adj[n]:
                raise ParseError(f"asymmetric or dangling edge {key} -- {n}")
    d = next(iter(nodes.values())).dim_ambient if nodes else None
    return MoveGraph(nodes, adj, {"d": d, "k": k, "vertex_filter": None})


def load_graph(path, k: int | None = None) -> MoveGraph:
    try:
        with open(path) as fh:
            return read_jsonl(fh, k)
    except UnicodeDecodeError as exc:
        raise ParseError(str(exc)) from exc


class GraphCache:
    """JSONL files keyed by (d, k, filter); a sidecar digest guards against
    truncated or edited files."""

    def __init__(self, root):
        self.root = Path(root)

    def _path(self, d, k, vertex_filter) -> Path:
        f = "all" if vertex_filter is None else "-".join(map(str, sorted(vertex_filter)))
        return self.root / f"lambda_d{d}_k{k}_{f}.jsonl"

    def get(self, d, k, vertex_filter=None) -> MoveGraph | None:
        path = self._path(d, k, vertex_filter)
        digest = path.with_suffix(".sha256")
        if not path.exists() or not digest.exists():
            return None
        data = path.read_bytes()
        if hashlib.sha256(data).hexdigest() != digest.read_text().strip():
            return None
        G = load_graph(path, k)
        G.metadata["vertex_filter"] = None if vertex_filter is None else sorted(vertex_filter)
        return G

    def put(self, G: MoveGraph) -> Path:
        m = G.metadata
        path = self._path(m["d"], m["k"], m["vertex_filter"])
        os.makedirs(self.root, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            write_jsonl(G, fh)
        os.replace(tmp, path)
        path.with_suffix(".sha256").write_text(hashlib.sha256(path.read_bytes()).hexdigest())
        return path
