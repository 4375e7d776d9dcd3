"""Reference implementations that share no code with the package.

Hull membership uses Caratheodory: x lies in conv(V) iff it lies in the
hull of some affinely independent subset of V, decided by an exact solve
of the barycentric system with Fractions.
"""
from fractions import Fraction
from itertools import combinations, product

import numpy as np


def _solve(cols, rhs):
    # least-squares-free exact solve of sum_j t_j cols[j] = rhs, or None
    n, m = len(rhs), len(cols)
    A = [[Fraction(cols[j][i]) for j in range(m)] + [Fraction(rhs[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(n):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][m] != 0 for i in range(r, n)):
        return None
    t = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        t[c] = A[i][m] / A[i][c]
    return t


def rank(vectors) -> int:
    if not vectors:
        return 0
    return int(np.linalg.matrix_rank(np.array(vectors, dtype=float)))


def in_hull(V, x) -> bool:
    V = [tuple(v) for v in V]
    x = tuple(x)
    if x in V:
        return True
    d = len(x)
    for size in range(1, min(len(V), d + 1) + 1):
        for S in combinations(V, size):
            if rank([tuple(a - b for a, b in zip(s, S[0])) for s in S[1:]]) != size - 1:
                continue
            # barycentric coordinates: rows are coordinates plus the affine row
            cols = [list(s) + [1] for s in S]
            t = _solve(cols, list(x) + [1])
            if t is not None and all(ti >= 0 for ti in t):
                return True
    return False


def vertex_set(points) -> set:
    pts = sorted(set(tuple(p) for p in points))
    return {p for p in pts if not in_hull([q for q in pts if q != p], p)}


def insertable(V, x) -> bool:
    """The definition: conv(V + x) has vertex set exactly V + x."""
    V = [tuple(v) for v in V]
    x = tuple(x)
    if x in V:
        return False
    return vertex_set(V + [x]) == set(V) | {x}


def deletable(V, v) -> bool:
    rest = [u for u in V if tuple(u) != tuple(v)]
    d = len(v)
    return rank([tuple(a - b for a, b in zip(u, rest[0])) for u in rest[1:]]) == d


def lattice_box(lo, hi):
    return list(product(*(range(a, b + 1) for a, b in zip(lo, hi))))


def all_polytopes_bruteforce(d, k):
    """Vertex sets of all full-dimensional polytopes in [0,k]^d, by plain subset scan."""
    pts = lattice_box([0] * d, [k] * d)
    out = []
    for mask in range(1, 1 << len(pts)):
        S = [pts[i] for i in range(len(pts)) if mask >> i & 1]
        if len(S) <= d:
            continue
        if rank([tuple(a - b for a, b in zip(s, S[0])) for s in S[1:]]) != d:
            continue
        if vertex_set(S) == set(S):
            out.append(frozenset(S))
    return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def planar_vertex_set(points) -> set:
    """Strict vertices of a planar point set (monotone chain)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return set(pts)
    chain = []
    for seq in (pts, pts[::-1]):
        part = []
        for p in seq:
            while len(part) >= 2 and _cross(part[-2], part[-1], p) <= 0:
                part.pop()
            part.append(p)
        chain += part[:-1]
    return set(chain)


def planar_insertable(V, x) -> bool:
    V = [tuple(v) for v in V]
    x = tuple(x)
    return x not in V and planar_vertex_set(V + [x]) == set(V) | {x}
