"""Constructive move sequences: insertion in lattice simplices, the walk from
any simplex to the corner simplex, and paths between point sets in convex
position.

Whenever several candidates are valid the lexicographically smallest one is
taken, so every trace here is deterministic.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (IllegalMove, InvalidInput, NotASimplex,
                     NotInConvexPosition, OutOfBox)
from .kernel import (Point, Polytope, affine_hull, convex_hull, dot,
                     integer_normal, sub)
from .moves import (DELETE, INSERT, Move, MoveTrace, apply_delete,
                    apply_insert, can_delete, can_insert, in_box)
from .constructions import corner_simplex


@dataclass(frozen=True)
class SimplexFacetFrame:
    """Data attached to one facet R = {x_i = gamma} of the bounding box Q of S.

    F holds the vertices of S on R and Fstar the others. ``c`` is a primitive
    integer vector orthogonal to both faces, oriented so that
    c.F = epsilon < epsilonstar = c.Fstar. ``delta`` is the minimum of c.x over
    the cube face aff(R) & [0,k]^d and G is where that minimum is reached:
    coordinate i is gamma, the coordinates in ``g_fixed`` are pinned, the
    ones in ``g_free`` range over 0..k.
    """

    S: Polytope
    k: int
    axis: int
    gamma: int
    lower: bool
    F: tuple[Point, ...]
    Fstar: tuple[Point, ...]
    c: Point
    epsilon: int
    epsilonstar: int
    delta: int
    g_fixed: tuple[tuple[int, int], ...]
    g_free: tuple[int, ...]

    @property
    def dim_F(self) -> int:
        return len(self.F) - 1

    @property
    def dim_G(self) -> int:
        return len(self.g_free)

    def box_lo(self) -> Point:
        return tuple(min(v[j] for v in self.S.vertices) for j in range(self.S.dim_ambient))

    def box_hi(self) -> Point:
        return tuple(max(v[j] for v in self.S.vertices) for j in range(self.S.dim_ambient))

    def in_R(self, x: Sequence[int]) -> bool:
        return x[self.axis] == self.gamma

    def in_Y_minus(self, x: Sequence[int]) -> bool:
        return dot(self.c, x) >= self.epsilonstar

    def G_points(self) -> Iterable[Point]:
        """Lattice points of G in lexicographic order."""
        d = self.S.dim_ambient
        fixed = dict(self.g_fixed)
        fixed[self.axis] = self.gamma
        ranges = [[fixed[j]] if j in fixed else range(self.k + 1) for j in range(d)]
        return itertools.product(*ranges)


def _check_simplex(S: Polytope, k: int) -> None:
    if k < 1:
        raise InvalidInput("box size must be positive")
    if not S.is_simplex():
        raise NotASimplex(f"expected {S.dim_ambient + 1} vertices, got {S.n_vertices}")
    if not in_box(S, k):
        raise OutOfBox(f"simplex not inside [0,{k}]^{S.dim_ambient}")


def simplex_frames(S: Polytope, k: int) -> list[SimplexFacetFrame]:
    """Frames for the 2d facets of the bounding box, ordered by (axis, lower first)."""
    _check_simplex(S, k)
    d = S.dim_ambient
    out = []
    for i in range(d):
        vals = [v[i] for v in S.vertices]
        for lower, gamma in ((True, min(vals)), (False, max(vals))):
            F = tuple(v for v in S.vertices if v[i] == gamma)
            Fs = tuple(v for v in S.vertices if v[i] != gamma)
            rows = [sub(v, F[0]) for v in F[1:]] + [sub(v, Fs[0]) for v in Fs[1:]]
            c = integer_normal(rows, d)
            eps, epss = dot(c, F[0]), dot(c, Fs[0])
            if eps > epss:
                c = tuple(-a for a in c)
                eps, epss = -eps, -epss
            delta = c[i] * gamma + sum(c[j] * k for j in range(d) if j != i and c[j] < 0)
            fixed = tuple((j, 0 if c[j] > 0 else k) for j in range(d) if j != i and c[j] != 0)
            free = tuple(j for j in range(d) if j != i and c[j] == 0)
            out.append(SimplexFacetFrame(S, k, i, gamma, lower, F, Fs, c, eps, epss,
                                         delta, fixed, free))
    return out


def _insertion_with_frame(S: Polytope, k: int) -> tuple[Point, SimplexFacetFrame, str]:
    frames = simplex_frames(S, k)
    d = S.dim_ambient
    g = max(fr.dim_F for fr in frames)
    best = [fr for fr in frames if fr.dim_F == g]

    if g == d - 1:
        fr = best[0]
        v = fr.Fstar[0]
        # every lattice point of the box on the hyperplane through v parallel to R
        ranges = [[v[j]] if j == fr.axis else range(k + 1) for j in range(d)]
        for x in itertools.product(*ranges):
            if x != v:
                return x, fr, "parallel"
        raise AssertionError("box has a single point")

    def hit(fr, cands, case):
        flat = affine_hull(list(fr.F))
        for x in cands:
            if not flat.contains(x) and not fr.in_Y_minus(x) and x not in S.vertex_set:
                return x, fr, case
        return None

    for fr in best:
        if fr.delta < fr.epsilon:
            r = hit(fr, fr.G_points(), "below")
            if r:
                return r
    for fr in best:
        if fr.dim_G > fr.dim_F:
            r = hit(fr, fr.G_points(), "wider")
            if r:
                return r
    for fr in best:
        ws = sorted({tuple(fr.gamma if j == fr.axis else v[j] for j in range(d))
                     for v in fr.Fstar})
        r = hit(fr, ws, "projection")
        if r:
            return r
    raise AssertionError(f"no insertion candidate found for {S.vertices}")


def find_simplex_insertion(S: Polytope, k: int) -> Point:
    """A lattice point of [0,k]^d insertable in the simplex S.

    When every facet of the bounding box meets S in a face of dimension at
    most d-2, the point also lies on such a facet R and outside aff(S & R).
    """
    x, _, _ = _insertion_with_frame(S, k)
    if not can_insert(S, x):
        raise AssertionError(f"case analysis returned non-insertable {x}")
    return x


# --------------------------------------------------------------------------
# simplex to corner


class _Walk:
    def __init__(self, P: Polytope):
        self.P = P
        self.moves: list[Move] = []

    def insert(self, x: Point) -> None:
        self.P = apply_insert(self.P, x)
        self.moves.append(Move(INSERT, tuple(x)))

    def delete(self, v: Point) -> None:
        self.P = apply_delete(self.P, v)
        self.moves.append(Move(DELETE, tuple(v)))

    def replay(self, moves: Iterable[Move]) -> None:
        for m in moves:
            (self.insert if m.kind == INSERT else self.delete)(m.point)


def _lift(moves: list[Move], axis: int, value: int) -> list[Move]:
    return [Move(m.kind, m.point[:axis] + (value,) + m.point[axis:]) for m in moves]


def _drop(points: Iterable[Point], axis: int) -> list[Point]:
    return [p[:axis] + p[axis + 1:] for p in points]


def _raise_facet(w: _Walk, k: int) -> None:
    """Alternate insert/delete until some bounding-box facet holds a facet of the simplex."""
    d = w.P.dim_ambient
    while True:
        x, fr, _ = _insertion_with_frame(w.P, k)
        if fr.dim_F == d - 1:
            return
        keep = set(fr.F) | {x}
        w.insert(x)
        for u in sorted(w.P.vertices):
            if u not in keep and can_delete(w.P, u):
                w.delete(u)
                break
        else:
            raise AssertionError("no vertex off the enlarged face can be deleted")


def _swap(p: Point) -> Point:
    return (p[1], p[0])


def _triangle_axis_edges(T: Polytope) -> tuple[list, list]:
    vs = T.vertices
    pairs = list(itertools.combinations(vs, 2))
    hor = [e for e in pairs if e[0][1] == e[1][1]]
    ver = [e for e in pairs if e[0][0] == e[1][0]]
    return hor, ver


def _corner_2d(w: _Walk, k: int) -> None:
    corner = corner_simplex(2)
    if w.P == corner:
        return
    _raise_facet(w, k)
    hor, ver = _triangle_axis_edges(w.P)
    # step 1: get a horizontal and a vertical edge
    if not (hor and ver):
        # work with a horizontal edge, swapping coordinates if needed
        flip = (lambda p: p) if hor else _swap
        e = (hor or ver)[0]
        apex = flip(next(v for v in w.P.vertices if v not in e))
        a, b = sorted((flip(e[0])[0], flip(e[1])[0]))
        x = (a, apex[1]) if apex[0] > a else (b, apex[1])
        w.insert(flip(x))
        w.delete(flip(apex))
    # step 2: turn the right angle to the top right of its bounding rectangle
    xs = [v[0] for v in w.P.vertices]
    ys = [v[1] for v in w.P.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    rect = {(x0, y0), (x0, y1), (x1, y0), (x1, y1)}
    right = next(v for v in w.P.vertices
                 if sum(u[0] == v[0] or u[1] == v[1] for u in w.P.vertices) == 3)
    if right != (x1, y1):
        w.insert((rect - w.P.vertex_set).pop())
        w.delete((x0, y0))
    # step 3: swap vertices one by one, origin first, top-right last
    targets = [(0, 0), (1, 0), (0, 1)]
    top_right = (x1, y1)
    path = _corner_search(w.P, targets, top_right)
    if path is None:
        raise AssertionError(f"no corner replacement from {w.P.vertices}")
    w.replay(path)


def _corner_search(P: Polytope, targets: list[Point], top_right: Point,
                   depth: int = 3) -> list[Move] | None:
    tset = set(targets)
    if P.vertex_set == tset:
        return []
    if depth == 0:
        return None
    missing = [t for t in targets if t not in P.vertex_set]
    if (0, 0) in missing:
        missing = [(0, 0)]
    for t in missing:
        if not can_insert(P, t):
            continue
        Q = apply_insert(P, t)
        extra = [v for v in Q.vertices if v not in tset]
        extra.sort(key=lambda v: (v == top_right, v))
        for v in extra:
            if not can_delete(Q, v):
                continue
            sub_path = _corner_search(apply_delete(Q, v), targets, top_right, depth - 1)
            if sub_path is not None:
                return [Move(INSERT, t), Move(DELETE, v)] + sub_path
    return None


def _to_corner(w: _Walk, k: int) -> None:
    d = w.P.dim_ambient
    if d == 2:
        _corner_2d(w, k)
        return
    if w.P == corner_simplex(d):
        return
    _raise_facet(w, k)
    fr = next(f for f in simplex_frames(w.P, k) if f.dim_F == d - 1)
    i, gamma = fr.axis, fr.gamma
    v = fr.Fstar[0]
    # rebuild the facet simplex as the corner of its cube face, moved to gamma e_i
    sub_moves = _corner_moves(_drop(fr.F, i), k)
    w.replay(_lift(sub_moves, i, gamma))
    # the result is the corner simplex of R translated by gamma e_i
    base = tuple(gamma if j == i else 0 for j in range(d))
    target_face = {base} | {tuple(b + (j == m) for m, b in enumerate(base))
                            for j in range(d) if j != i}
    assert target_face <= w.P.vertex_set, "facet recursion missed the corner"
    # swap the apex for its projection onto the i-th axis
    vi = tuple(v[i] if j == i else 0 for j in range(d))
    if vi != v:
        w.insert(vi)
        w.delete(v)
    j = 0 if i != 0 else 1
    vprime = tuple(gamma if m == i else int(m == j) for m in range(d))
    face = [u for u in w.P.vertices if u != vprime]
    sub_moves = _corner_moves(_drop(face, j), k)
    w.replay(_lift(sub_moves, j, 0))
    ej = tuple(int(m == j) for m in range(d))
    if ej != vprime:
        w.insert(ej)
        w.delete(vprime)


def _corner_moves(points: list[Point], k: int) -> list[Move]:
    w = _Walk(convex_hull(points))
    _to_corner(w, k)
    return w.moves


def simplex_to_corner_path(S: Polytope, k: int) -> MoveTrace:
    """Alternating insert/delete trace from S to the corner simplex inside [0,k]^d."""
    _check_simplex(S, k)
    d = S.dim_ambient
    if d < 2:
        raise InvalidInput("need d >= 2")
    w = _Walk(S)
    _to_corner(w, k)
    trace = MoveTrace(S, w.moves)
    end = trace.replay(box=k)[-1]
    if end != corner_simplex(d):
        raise AssertionError(f"walk ended at {end.vertices}")
    return trace


# --------------------------------------------------------------------------
# convex position


def jointly_convex(P: Polytope, Q: Polytope) -> bool:
    union = P.vertex_set | Q.vertex_set
    H = convex_hull(list(union), P.dim_ambient)
    return H.vertex_set == union


def connect_convex_position(P: Polytope, Q: Polytope) -> MoveTrace:
    """Trace P -> Q when their vertex sets are jointly in convex position.

    Inserts the smallest missing vertex of Q, then deletes the smallest
    deletable vertex not in Q. Vertex counts stay in {n, n+1}.
    """
    if P.dim_ambient != Q.dim_ambient:
        raise InvalidInput("dimension mismatch")
    if not jointly_convex(P, Q):
        raise NotInConvexPosition("vertices of P and Q are not in convex position")
    n = min(P.n_vertices, Q.n_vertices)
    if max(P.n_vertices, Q.n_vertices) > n + 1:
        raise InvalidInput("vertex counts must be n or n+1")
    VQ = Q.vertex_set
    w = _Walk(P)
    try:
        while w.P.vertex_set != VQ:
            if w.P.n_vertices == n + 1:
                cands = [u for u in w.P.vertices if u not in VQ and can_delete(w.P, u)]
                if not cands:
                    raise IllegalMove("greedy stuck")
                w.delete(cands[0])
            else:
                w.insert(min(VQ - w.P.vertex_set))
        return MoveTrace(P, w.moves)
    except IllegalMove:
        return MoveTrace(P, _bfs_within(P, Q, n))


def _bfs_within(P: Polytope, Q: Polytope, n: int) -> list[Move]:
    # shortest path inside the subsets of the union with n or n+1 points
    union = sorted(P.vertex_set | Q.vertex_set)
    d = P.dim_ambient
    start, goal = P.vertex_set, Q.vertex_set
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            break
        poly = Polytope(cur, d)
        steps = []
        if len(cur) == n:
            steps = [(Move(INSERT, x), cur | {x}) for x in union if x not in cur]
        if len(cur) == n + 1:
            steps += [(Move(DELETE, u), cur - {u}) for u in sorted(cur) if can_delete(poly, u)]
        for mv, nxt in steps:
            nxt = frozenset(nxt)
            if nxt not in prev:
                prev[nxt] = (cur, mv)
                queue.append(nxt)
    if goal not in prev:
        raise NotInConvexPosition("no path inside the union")
    out = []
    node = goal
    while prev[node] is not None:
        node, mv = prev[node]
        out.append(mv)
    return out[::-1]
