"""Insertion and deletion moves on lattice polytopes.

A point x can be inserted in P when the hull of P and x keeps every vertex
of P and gains x; a vertex can be deleted when the remaining vertices still
span the ambient space. Insertion is decided through vertex cones: x is
insertable iff it lies outside P and outside the cone of every vertex.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, NamedTuple, Sequence

from .errors import IllegalMove, InvalidInput, NotAVertex, OutOfBox
from .kernel import (HalfSpace, Point, Polytope, as_point,
                     convex_hull, cyclic_vertices, dot, independent_subset,
                     primitive, rank, sub)

INSERT = "insert"
DELETE = "delete"


class Move(NamedTuple):
    kind: str
    point: Point

    def to_json(self) -> dict:
        return {"kind": self.kind, "point": list(self.point)}


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone pointed at ``apex``; halfspaces use ``a.x <= b``."""

    apex: Point
    halfspaces: tuple[HalfSpace, ...]

    def contains(self, x: Sequence[int]) -> bool:
        return all(h.contains(x) for h in self.halfspaces)


# --------------------------------------------------------------------------
# predicates


def _point_for(P: Polytope, x: Iterable) -> Point:
    x = as_point(x)
    if len(x) != P.dim_ambient:
        raise InvalidInput(f"point {x} does not live in dimension {P.dim_ambient}")
    return x


def _require_vertex(P: Polytope, v: Iterable) -> Point:
    v = _point_for(P, v)
    if v not in P.vertex_set:
        raise NotAVertex(f"{v} is not a vertex")
    return v


def vertex_cone(P: Polytope, v: Iterable) -> Cone:
    v = _require_vertex(P, v)
    hs = tuple(HalfSpace(tuple(-a for a in f.normal), -f.offset)
               for f in P.incident_facets(v))
    return Cone(v, hs)


def _incidence_masks(P: Polytope) -> list[int]:
    # bit j of mask i is set when facet j contains vertex i
    cache = _MASKS.get(P)
    if cache is None:
        facets = P.facets
        cache = []
        for v in P.vertices:
            m = 0
            for j, f in enumerate(facets):
                if dot(f.normal, v) == f.offset:
                    m |= 1 << j
            cache.append(m)
        if len(_MASKS) > 4096:
            _MASKS.clear()
        _MASKS[P] = cache
    return cache


_MASKS: dict[Polytope, list[int]] = {}


def _box_corner_position(verts: Iterable[Point], x: Point) -> bool:
    # points taking at most two values per coordinate are vertices of a box,
    # hence in convex position
    cols = [set(c) for c in zip(*verts)]
    return all(len(col | {c}) <= 2 for col, c in zip(cols, x))


def can_insert(P: Polytope, x: Iterable) -> bool:
    """True iff x lies outside P and outside every vertex cone of P."""
    x = _point_for(P, x)
    if x in P.vertex_set:
        return False
    if _box_corner_position(P.vertices, x):
        return True
    beyond = 0
    outside = False
    for j, f in enumerate(P.facets):
        s = dot(f.normal, x) - f.offset
        if s >= 0:
            beyond |= 1 << j
            outside = outside or s > 0
    if not outside:
        return False
    # x lies in the cone of v iff every facet at v is weakly beyond x
    for m in _incidence_masks(P):
        if m & ~beyond == 0:
            return False
    return True


def can_insert_by_hull(P: Polytope, x: Iterable) -> bool:
    """Definitional check through a fresh convex hull (independent oracle)."""
    x = _point_for(P, x)
    if x in P.vertex_set:
        return False
    Q = convex_hull(list(P.vertices) + [x], P.dim_ambient)
    return set(Q.vertices) == set(P.vertices) | {x}


def can_delete(P: Polytope, v: Iterable) -> bool:
    v = _require_vertex(P, v)
    d = P.dim_ambient
    if len(P.vertices) <= d + 1:
        return False
    rest = [u for u in P.vertices if u != v]
    base = rest[0]
    return rank([sub(u, base) for u in rest[1:]]) == d


def deletable_vertices(P: Polytope) -> list[Point]:
    d = P.dim_ambient
    if len(P.vertices) <= d + 1:
        return []
    # vertices outside one affine basis can always go; only the basis needs checking
    base = P.vertices[0]
    basis = {P.vertices[0]} | {P.vertices[i + 1] for i in
                               independent_subset([sub(u, base) for u in P.vertices[1:]])}
    return [v for v in P.vertices if v not in basis or can_delete(P, v)]


def apply_insert(P: Polytope, x: Iterable) -> Polytope:
    x = _point_for(P, x)
    if not can_insert(P, x):
        raise IllegalMove(f"{x} cannot be inserted")
    return Polytope(P.vertices + (x,), P.dim_ambient)


def apply_delete(P: Polytope, v: Iterable) -> Polytope:
    v = _point_for(P, v)
    if v not in P.vertex_set or not can_delete(P, v):
        raise IllegalMove(f"{v} cannot be deleted")
    return Polytope([u for u in P.vertices if u != v], P.dim_ambient)


def apply_move(P: Polytope, move: Move) -> Polytope:
    if move.kind == INSERT:
        return apply_insert(P, move.point)
    if move.kind == DELETE:
        return apply_delete(P, move.point)
    raise InvalidInput(f"unknown move kind {move.kind!r}")


# --------------------------------------------------------------------------
# traces


@dataclass
class MoveTrace:
    start: Polytope
    moves: list[Move] = field(default_factory=list)

    def __len__(self):
        return len(self.moves)

    def replay(self, box: int | None = None) -> list[Polytope]:
        """All polytopes along the trace, validating every move."""
        out = [self.start]
        cur = self.start
        for mv in self.moves:
            cur = apply_move(cur, mv)
            if box is not None and not in_box(cur, box):
                raise OutOfBox(f"trace leaves [0,{box}]^d at {mv}")
            out.append(cur)
        return out

    def end(self) -> Polytope:
        return self.replay()[-1]

    def extend(self, other: "MoveTrace") -> None:
        self.moves.extend(other.moves)

    def to_json(self) -> dict:
        return {"start": {"dim": self.start.dim_ambient,
                          "vertices": [list(v) for v in self.start.vertices]},
                "moves": [m.to_json() for m in self.moves]}


# --------------------------------------------------------------------------
# box-restricted enumeration


def box_points(d: int, k: int) -> Iterable[Point]:
    return itertools.product(range(k + 1), repeat=d)


def in_box(P: Polytope, k: int) -> bool:
    return all(0 <= c <= k for v in P.vertices for c in v)


def _check_box(P: Polytope, k: int) -> None:
    if k < 1:
        raise InvalidInput("box size must be positive")
    if not in_box(P, k):
        raise OutOfBox(f"polytope not inside [0,{k}]^{P.dim_ambient}")


def insertable_points(P: Polytope, k: int) -> list[Point]:
    _check_box(P, k)
    return [x for x in box_points(P.dim_ambient, k) if can_insert(P, x)]


def neighbors_in_box(P: Polytope, k: int,
                     vertex_filter: Iterable[int] | None = None) -> list[tuple[Move, Polytope]]:
    """Every polytope one valid move away that stays inside [0,k]^d."""
    _check_box(P, k)
    allowed = set(vertex_filter) if vertex_filter is not None else None
    n = len(P.vertices)
    if allowed is not None and n not in allowed:
        return []
    out = []
    ins_ok = allowed is None or n + 1 in allowed
    del_ok = allowed is None or n - 1 in allowed
    deletable = set(deletable_vertices(P)) if del_ok else ()
    for x in box_points(P.dim_ambient, k):
        if x in P.vertex_set:
            if x in deletable:
                out.append((Move(DELETE, x),
                            Polytope([u for u in P.vertices if u != x], P.dim_ambient)))
        elif ins_ok and can_insert(P, x):
            out.append((Move(INSERT, x), Polytope(P.vertices + (x,), P.dim_ambient)))
    return out


# --------------------------------------------------------------------------
# planar insertion cells


@dataclass(frozen=True)
class Cell2D:
    """Open region beyond one edge of a polygon where insertion is possible.

    The cell is {edge.x > c} cut by the strict inner sides of the two
    neighbouring edge lines. ``apex`` is the far corner of a bounded
    (triangular) cell; ``kind`` is "triangle", "strip" or "wedge".
    """

    edge: tuple[Point, Point]
    constraints: tuple[tuple[Point, int, int], ...]  # (normal, offset, sign): sign*(n.x - c) > 0
    kind: str
    apex: tuple[Fraction, Fraction] | None

    @property
    def bounded(self) -> bool:
        return self.kind == "triangle"

    def contains(self, x: Sequence[int]) -> bool:
        return all(s * (dot(n, x) - c) > 0 for n, c, s in self.constraints)

    def lattice_points(self) -> list[Point]:
        """Lattice points of a bounded cell (strictly inside the triangle)."""
        if not self.bounded:
            raise InvalidInput("unbounded cell")
        xs = [Fraction(self.edge[0][0]), Fraction(self.edge[1][0]), self.apex[0]]
        ys = [Fraction(self.edge[0][1]), Fraction(self.edge[1][1]), self.apex[1]]
        return [(i, j)
                for i in range(floor(min(xs)), ceil(max(xs)) + 1)
                for j in range(floor(min(ys)), ceil(max(ys)) + 1)
                if self.contains((i, j))]

    def has_lattice_point(self) -> bool:
        if self.kind == "triangle":
            return bool(self.lattice_points())
        if self.kind == "wedge":
            return True  # contains discs of every radius
        # strip: integer values of m.x strictly between the two side lines
        (n1, c1, _), (n2, c2, _) = self.constraints[1:]
        # n2 == -n1 for the primitive normals of parallel opposite edges
        return c1 + c2 >= 2

    def to_json(self) -> dict:
        return {"edge": [list(self.edge[0]), list(self.edge[1])],
                "kind": self.kind,
                "bounded": self.bounded,
                "apex": None if self.apex is None else [str(c) for c in self.apex],
                "has_lattice_point": self.has_lattice_point()}


def insertable_cells_2d(P: Polytope) -> list[Cell2D]:
    """One open cell per edge; their union is exactly the insertable set."""
    if P.dim_ambient != 2:
        raise InvalidInput("planar cells need d = 2")
    ring = cyclic_vertices(P)
    n = len(ring)
    lines = []
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        nrm = (b[1] - a[1], a[0] - b[0])
        nrm = primitive(nrm)
        lines.append((nrm, dot(nrm, a)))
    cells = []
    for i in range(n):
        (ni, ci), (np_, cp), (nn, cn) = lines[i], lines[i - 1], lines[(i + 1) % n]
        cons = ((ni, ci, 1), (np_, cp, -1), (nn, cn, -1))
        det = np_[0] * nn[1] - np_[1] * nn[0]
        if det == 0:
            kind, apex = "strip", None
        else:
            zx = Fraction(cp * nn[1] - cn * np_[1], det)
            zy = Fraction(np_[0] * cn - nn[0] * cp, det)
            if ni[0] * zx + ni[1] * zy > ci:
                kind, apex = "triangle", (zx, zy)
            else:
                kind, apex = "wedge", None
        cells.append(Cell2D((ring[i], ring[(i + 1) % n]), cons, kind, apex))
    return cells


def insertable_lattice_points_2d(P: Polytope) -> list[Point] | None:
    """All lattice points of Z^2 insertable in P, or None if there are infinitely many."""
    pts: list[Point] = []
    for cell in insertable_cells_2d(P):
        if cell.bounded:
            pts.extend(cell.lattice_points())
        elif cell.has_lattice_point():
            return None
    return sorted(set(pts))
