"""Explicit lattice polytope families."""
from __future__ import annotations

import itertools

from .errors import InvalidInput, Unsupported
from .kernel import MAX_DIM, HalfSpace, Point, Polytope, check_dim, convex_hull


def corner_simplex(d: int, k: int = 1) -> Polytope:
    """The origin together with the d unit vectors."""
    if d < 2:
        raise Unsupported("corner simplex needs d >= 2")
    check_dim(d)
    if k < 1:
        raise InvalidInput("box size must be positive")
    verts = [tuple([0] * d)] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return convex_hull(verts, d)


def unit_cube(d: int) -> Polytope:
    check_dim(d)
    verts = [tuple((m >> j) & 1 for j in range(d)) for m in range(2 ** d)]
    return convex_hull(verts, d)


def _f(x: int) -> int:
    return x * (x - 1) // 2


def pn_polygon(n: int) -> Polytope:
    """Lattice n-gon (n >= 4, n != 5) in which no point of Z^2 can be inserted.

    Even n: points (x, x(x-1)/2) for 0 <= x < n/2 and their mirror images
    through a/2 with a = (n/2 - 1, f(n/2 - 1) + 1). Odd n: hull of P_{n+1}
    and a + (0, 1).
    """
    if n < 4 or n == 5:
        raise Unsupported(f"no P_n construction for n = {n}")
    if n == 4:
        return convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    if n % 2 == 0:
        m = n // 2
        a = (m - 1, _f(m - 1) + 1)
        half = [(x, _f(x)) for x in range(m)]
        pts = half + [(a[0] - x, a[1] - y) for x, y in half]
        P = convex_hull(pts)
    else:
        m = (n + 1) // 2
        a = (m - 1, _f(m - 1) + 1)
        P = convex_hull(list(pn_polygon(n + 1).vertices) + [(a[0], a[1] + 1)])
    if P.n_vertices != n:
        raise AssertionError(f"P_{n} construction produced {P.n_vertices} vertices")
    return P


def empty_simplex(k: int) -> Polytope:
    """(k+1)-simplex whose vertices are the columns of the (k+1) x (k+2) matrix
    with k on the diagonal and 1 on the superdiagonal."""
    if k < 2:
        raise Unsupported("empty simplex needs k >= 2")
    rows = k + 1
    cols = []
    for j in range(k + 2):
        col = [0] * rows
        if j < rows:
            col[j] = k
        if j >= 1:
            col[j - 1] = 1
        cols.append(tuple(col))
    return convex_hull(cols, rows)


def cartesian_product(P: Polytope, Q: Polytope) -> Polytope:
    """P x Q with facets lifted from the factors."""
    p, q = P.dim_ambient, Q.dim_ambient
    if p + q > MAX_DIM:
        raise Unsupported(f"product dimension {p + q} exceeds {MAX_DIM}")
    verts = [u + v for u in P.vertices for v in Q.vertices]
    facets = [HalfSpace(f.normal + (0,) * q, f.offset) for f in P.facets]
    facets += [HalfSpace((0,) * p + g.normal, g.offset) for g in Q.facets]
    return Polytope(verts, p + q, facets)


def power(P: Polytope, m: int) -> Polytope:
    out = P
    for _ in range(m - 1):
        out = cartesian_product(out, P)
    return out


def saturating_polytope(d: int, k: int) -> Polytope:
    """Product of d/(k+1) copies of empty_simplex(k)."""
    if k < 2:
        raise Unsupported("saturating polytope needs k >= 2")
    if d % (k + 1) != 0 or d == k + 1:
        raise Unsupported(f"k+1 = {k + 1} must be a proper divisor of d = {d}")
    check_dim(d)
    return power(empty_simplex(k), d // (k + 1))


def segment(lo: int, hi: int) -> Polytope:
    if lo >= hi:
        raise InvalidInput("empty or degenerate segment")
    return convex_hull([(lo,), (hi,)], 1)


def lattice_points_in(P: Polytope, lo: Point | None = None,
                      hi: Point | None = None) -> list[Point]:
    """Lattice points of P, scanned over its bounding box."""
    d = P.dim_ambient
    lo = lo or tuple(min(v[i] for v in P.vertices) for i in range(d))
    hi = hi or tuple(max(v[i] for v in P.vertices) for i in range(d))
    return [x for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
            if P.contains(x)]
