"""Normal forms for lattice polygons and the pentagon pipeline.

A polygon is oblique when two consecutive vertices a, b dominate every
other vertex strictly in both coordinates (a below, b above). It is flat
along a lattice vector c when a.c <= v.c <= b.c for every other vertex v,
and strongly flat when all those inequalities are strict.

Pipeline for a pentagon: flatten (one insert and one delete), make strongly
flat (push the two ends out along c), shear to an oblique polygon and
connect through convex position.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import floor, gcd
from typing import NamedTuple

from .errors import InvalidInput, NotAPentagon, NotFlat, NotStronglyFlat
from .kernel import (Point, Polytope, add, convex_hull, cyclic_vertices, dot,
                     primitive, scale, sub)
from .moves import (DELETE, INSERT, Move, MoveTrace, apply_delete, apply_insert,
                    can_insert)
from .paths import connect_convex_position, jointly_convex


class FlatWitness(NamedTuple):
    c: Point
    a: Point
    b: Point


@dataclass(frozen=True)
class ShearParams:
    c: Point
    u: Point
    k: int
    phi: tuple[Fraction, ...]


def _check_polygon(P: Polytope) -> None:
    if P.dim_ambient != 2:
        raise InvalidInput("polygon expected (d = 2)")


def _consecutive_pairs(P: Polytope):
    ring = cyclic_vertices(P)
    n = len(ring)
    for i in range(n):
        p, q = ring[i], ring[(i + 1) % n]
        yield p, q
        yield q, p


def is_oblique(P: Polytope) -> tuple[Point, Point] | None:
    _check_polygon(P)
    for a, b in _consecutive_pairs(P):
        if all(a[0] < v[0] < b[0] and a[1] < v[1] < b[1]
               for v in P.vertices if v != a and v != b):
            return a, b
    return None


def _rot(v: Point) -> Point:
    return (-v[1], v[0])


def is_flat(P: Polytope, strict: bool = False) -> FlatWitness | None:
    """Flatness witness from the cone {c : (v-a).c >= 0, (b-v).c >= 0}.

    The extreme rays of that planar cone are perpendicular to one of the
    constraint normals, so it is enough to test those directions, the
    normals themselves (half-plane case) and sums of two rays (interior).
    """
    _check_polygon(P)
    for a, b in _consecutive_pairs(P):
        normals = []
        for v in P.vertices:
            if v != a and v != b:
                normals += [sub(v, a), sub(b, v)]
        normals = [n for n in normals if n != (0, 0)]

        def ok(c):
            vals = [dot(n, c) for n in normals]
            return all(x > 0 for x in vals) if strict else all(x >= 0 for x in vals)

        rays = []
        for n in normals:
            r = _rot(n)
            rays += [r, (-r[0], -r[1])]
        cands = rays + normals + [add(r, s) for i, r in enumerate(rays) for s in rays[i + 1:]]
        for c in cands:
            if c != (0, 0) and ok(c):
                return FlatWitness(primitive(c), a, b)
    return None


def witness_holds(P: Polytope, w: FlatWitness, strict: bool = False) -> bool:
    lo, hi = dot(w.a, w.c), dot(w.b, w.c)
    others = [dot(v, w.c) for v in P.vertices if v != w.a and v != w.b]
    if strict:
        return all(lo < x < hi for x in others)
    return all(lo <= x <= hi for x in others)


def _path_between(P: Polytope, a: Point, b: Point) -> list[Point]:
    """Vertices from a to b going the long way round (avoiding edge ab)."""
    ring = list(cyclic_vertices(P))
    n = len(ring)
    ia = ring.index(a)
    step = -1 if ring[(ia + 1) % n] == b else 1
    return [ring[(ia + step * t) % n] for t in range(n)]


# --------------------------------------------------------------------------
# flattening pentagons


def _line_parallel(p: Point, q: Point, r: Point, s: Point) -> bool:
    u, v = sub(q, p), sub(s, r)
    return u[0] * v[1] - u[1] * v[0] == 0


def _labelings(P: Polytope):
    ring = list(cyclic_vertices(P))
    for seq in (ring, ring[::-1]):
        for r in range(5):
            yield seq[r:] + seq[:r]


def flatten_pentagon(P: Polytope) -> MoveTrace:
    """Empty trace for a flat pentagon, else one insertion and one deletion."""
    _check_polygon(P)
    if P.n_vertices != 5:
        raise NotAPentagon(f"{P.n_vertices} vertices")
    if is_flat(P):
        return MoveTrace(P, [])
    for p1, p2, p3, p4, p5 in _labelings(P):
        # E1 = p3p4 is the edge opposite p1, F joins p2 and p5
        if not _line_parallel(p2, p5, p3, p4):
            cands = [(add(sub(p3, p2), p5), p2)]
        else:
            x = sub(add(p1, p3), p4)
            cands = [(x, p4), (add(sub(x, p2), p5), p3)]
        for x, victim in cands:
            if not can_insert(P, x):
                continue
            Q = apply_delete(apply_insert(P, x), victim)
            if is_flat(Q):
                return MoveTrace(P, [Move(INSERT, x), Move(DELETE, victim)])
    raise AssertionError(f"no flattening move found for {P.vertices}")


# --------------------------------------------------------------------------
# strongly flat


def _push_end(P: Polytope, path: list[Point], c: Point,
              max_t: int = 1 << 16) -> tuple[list[Move], Polytope, list[Point]]:
    """Make p1.c < p2.c strict at the start of ``path`` (p1 .. pn)."""
    p1, p2, p3, pn = path[0], path[1], path[2], path[-1]
    if dot(p1, c) < dot(p2, c):
        return [], P, path
    u = primitive(_rot(c))
    # outer normal of the edge E = p1 pn
    nE = _rot(sub(pn, p1))
    if dot(nE, sub(p3, p1)) > 0:
        nE = scale(-1, nE)
    if dot(nE, u) < 0:
        u = scale(-1, u)
    offE = dot(nE, p1)
    cc = dot(c, c)
    m = floor(Fraction(dot(p3, c) - dot(p1, c), cc)) + 1
    t0 = 1
    while dot(nE, add(p3, scale(t0, u))) <= offE:
        t0 += 1

    def attempt(t):
        x = add(p3, scale(t, u))
        if not can_insert(P, x):
            return None
        Q = apply_delete(apply_insert(P, x), p2)
        y = sub(x, scale(m, c))
        if not can_insert(Q, y):
            return None
        R = apply_delete(apply_insert(Q, y), x)
        new_path = _path_between(R, y, pn) if _adjacent(R, y, pn) else None
        if new_path is None:
            return None
        moves = [Move(INSERT, x), Move(DELETE, p2), Move(INSERT, y), Move(DELETE, x)]
        return moves, R, new_path

    # the side conditions only improve as x moves away: find a working
    # distance by doubling, then the smallest one below it by scanning
    hi = t0
    while attempt(hi) is None:
        hi *= 2
        if hi > max_t:
            raise AssertionError("far point search did not terminate")
    for t in range(t0, hi + 1):
        r = attempt(t)
        if r is not None:
            return r
    raise AssertionError("unreachable")


def _adjacent(P: Polytope, a: Point, b: Point) -> bool:
    ring = cyclic_vertices(P)
    n = len(ring)
    i = ring.index(a)
    return b in (ring[(i + 1) % n], ring[i - 1])


def make_strongly_flat(P: Polytope) -> MoveTrace:
    """Trace from a flat polygon with n >= 5 vertices to a strongly flat one."""
    _check_polygon(P)
    if P.n_vertices < 5:
        raise InvalidInput("need at least 5 vertices")
    if is_flat(P, strict=True):
        return MoveTrace(P, [])
    w = is_flat(P)
    if w is None:
        raise NotFlat(f"{P.vertices} is not flat")
    c = w.c
    path = _path_between(P, w.a, w.b)
    moves1, Q, path = _push_end(P, path, c)
    neg = scale(-1, c)
    moves2, R, _ = _push_end(Q, path[::-1], neg)
    trace = MoveTrace(P, moves1 + moves2)
    if not witness_holds(R, FlatWitness(c, *_ends(R, c)), strict=True):
        raise AssertionError("result is not strongly flat")
    return trace


def _ends(P: Polytope, c: Point) -> tuple[Point, Point]:
    vals = sorted(P.vertices, key=lambda v: dot(v, c))
    return vals[0], vals[-1]


# --------------------------------------------------------------------------
# shear


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def shear_multiplier(phi, qs, u, start: int | None = None) -> int:
    """Smallest positive multiple of the phi denominators meeting the
    coordinate-separation inequalities between consecutive q's."""
    base = 1
    for f in phi:
        base = _lcm(base, Fraction(f).denominator)
    first = base if start is None else max(base, -(-start // base) * base)
    for k in count(first, base):
        good = True
        for i in range(len(qs) - 1):
            dphi = k * (Fraction(phi[i + 1]) - Fraction(phi[i]))
            for j in (0, 1):
                if abs(dphi * u[j]) <= abs(qs[i + 1][j] - qs[i][j]):
                    good = False
        if good:
            return k


def _strict_between(path: list[Point], c: Point) -> bool:
    lo, hi = dot(path[0], c), dot(path[-1], c)
    return all(lo < dot(v, c) < hi for v in path[1:-1])


def _shear_normal(c: Point, path: list[Point]) -> Point:
    """A witness with both coordinates nonzero, of opposite signs when a
    small perturbation of c allows it (then the sheared polygon is oblique
    rather than mirror-oblique)."""
    if c[0] * c[1] < 0:
        return c
    tried = []
    for mult in range(1, 65):
        for e in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            cand = add(scale(mult, c), e)
            if cand[0] and cand[1] and _strict_between(path, cand):
                if cand[0] * cand[1] < 0:
                    return cand
                tried.append(cand)
        if tried and c[0] and c[1]:
            break
    if c[0] and c[1]:
        return c
    return tried[0]


def monotone_pair(P: Polytope, mirrored: bool = False) -> tuple[Point, Point] | None:
    """Like is_oblique; with ``mirrored`` the second coordinate decreases from a to b."""
    if not mirrored:
        return is_oblique(P)
    for a, b in _consecutive_pairs(P):
        if all(a[0] < v[0] < b[0] and a[1] > v[1] > b[1]
               for v in P.vertices if v != a and v != b):
            return a, b
    return None


def shear_params(P: Polytope, witness: FlatWitness | None = None
                 ) -> tuple[ShearParams, list[Point], Polytope]:
    """Shear of the reflection of P through the midpoint of edge E = p1 pn.

    Returns the parameters, the images r^i of the reflected vertices and
    their hull. The hull is oblique when c1*c2 < 0 and mirror-oblique
    otherwise.
    """
    w = witness or is_flat(P, strict=True)
    if w is None or not witness_holds(P, w, strict=True):
        raise NotStronglyFlat(f"{P.vertices} is not strongly flat")
    path = _path_between(P, w.a, w.b)
    if dot(path[0], w.c) > dot(path[-1], w.c):
        path = path[::-1]
    c = _shear_normal(w.c, path)
    p1, pn = path[0], path[-1]
    u = primitive(_rot(c))
    nE = _rot(sub(pn, p1))
    if dot(nE, sub(path[1], p1)) > 0:
        nE = scale(-1, nE)
    if dot(nE, u) < 0:
        u = scale(-1, u)
    qs = [sub(add(p1, pn), p) for p in path]
    # x - q1 = s e2 + t u, and c.u = 0, so s = (x - q1).c / c2
    phi = tuple(Fraction(dot(sub(q, qs[0]), c), c[1]) for q in qs)
    # the phi's share one sign; orient them so k*phi >= 0 and the shear
    # pushes Q further away from P along u
    if any(f < 0 for f in phi):
        phi = tuple(-f for f in phi)
    mirrored = u[0] * u[1] < 0
    k = None
    while True:
        k = shear_multiplier(phi, qs, u, None if k is None else k + 1)
        rs = [add(q, scale(int(k * f), u)) for q, f in zip(qs, phi)]
        R = convex_hull(rs)
        if (R.n_vertices == len(rs) and monotone_pair(R, mirrored)
                and jointly_convex(P, R)):
            return ShearParams(c, u, k, phi), rs, R
        if k > 1 << 12:
            raise AssertionError("no shear multiplier gives joint convex position")


def shear_to_oblique(P: Polytope) -> MoveTrace:
    """Trace from a strongly flat polygon to an oblique one.

    If the shear lands on a mirror-oblique polygon, that polygon is strongly
    flat along (1,-1) and a second shear finishes the job.
    """
    _check_polygon(P)
    if is_oblique(P):
        return MoveTrace(P, [])
    _, _, R = shear_params(P)
    trace = connect_convex_position(P, R)
    pair = monotone_pair(R, mirrored=True)
    if pair is not None and not is_oblique(R):
        _, _, R2 = shear_params(R, FlatWitness((1, -1), *pair))
        trace.extend(connect_convex_position(R, R2))
    return trace


def pentagon_pipeline(P: Polytope) -> MoveTrace:
    """flatten -> strongly flat -> oblique, as one trace."""
    t1 = flatten_pentagon(P)
    Q = t1.end()
    t2 = make_strongly_flat(Q)
    R = t2.end()
    t3 = shear_to_oblique(R)
    return MoveTrace(P, t1.moves + t2.moves + t3.moves)
