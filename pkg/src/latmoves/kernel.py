"""Exact integer geometry: ranks, normals, affine hulls and convex hulls.

Every predicate in this module is decided by exact integer (occasionally
rational) arithmetic. Points are plain tuples of Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidInput, NotFullDimensional

Point = tuple[int, ...]

MIN_DIM = 1
MAX_DIM = 8


# --------------------------------------------------------------------------
# vectors and matrices


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def scale(t: int, a: Sequence[int]) -> Point:
    return tuple(t * x for x in a)


def primitive(v: Sequence[int]) -> Point:
    """Divide an integer vector by the gcd of its entries."""
    g = reduce(gcd, v, 0)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def as_point(x: Iterable) -> Point:
    out = []
    for c in x:
        if isinstance(c, bool) or not isinstance(c, int):
            if isinstance(c, Fraction) and c.denominator == 1:
                c = c.numerator
            elif isinstance(c, float) and c.is_integer():
                c = int(c)
            else:
                raise InvalidInput(f"non-integer coordinate {c!r}")
        out.append(int(c))
    return tuple(out)


def check_points(points: Iterable) -> tuple[list[Point], int | None]:
    """Convert to tuples and check that all points share one length."""
    pts = [as_point(p) for p in points]
    if not pts:
        return pts, None
    d = len(pts[0])
    for p in pts:
        if len(p) != d:
            raise InvalidInput(f"mixed dimensions: {len(p)} and {d}")
    return pts, d


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        pv = prow[c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                row = m[i]
                m[i] = [pv * row[j] - f * prow[j] for j in range(ncols)]
        r += 1
        if r == len(m):
            break
    return r


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = mat
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(r) for r in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pk - m[i][k] * m[k][j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


def independent_subset(vectors: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a greedily chosen maximal linearly independent subset."""
    chosen: list[int] = []
    basis: list[tuple[int, list[int]]] = []  # (pivot column, reduced row)
    for i, v in enumerate(vectors):
        row = list(v)
        for c, b in basis:
            f = row[c]
            if f:
                pv = b[c]
                row = [pv * x - f * y for x, y in zip(row, b)]
        piv = next((c for c, x in enumerate(row) if x), None)
        if piv is not None:
            basis.append((piv, row))
            chosen.append(i)
    return chosen


def integer_normal(vectors: Sequence[Sequence[int]], d: int) -> Point:
    """Primitive integer vector orthogonal to vectors spanning a (d-1)-space.

    Raises InvalidInput when the span is not a hyperplane.
    """
    idx = independent_subset(vectors)
    if len(idx) != d - 1:
        raise InvalidInput("vectors do not span a hyperplane")
    rows = [vectors[i] for i in idx]
    normal = []
    for j in range(d):
        minor = [[r[c] for c in range(d) if c != j] for r in rows]
        det = determinant(minor)
        normal.append(det if j % 2 == 0 else -det)
    return primitive(normal)


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[Point]:
    """Primitive integer basis (over Q) of {x : rows . x = 0}."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in vec), 1)
        basis.append(primitive([int(x * den) for x in vec]))
    return basis


def solve_rational(mat: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a square linear system exactly; None when singular."""
    n = len(mat)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def integer_kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[Point]:
    """Z-basis of the lattice {x in Z^n : rows . x = 0}.

    Column reduction by unimodular operations; the transformed unit columns
    that end up paired with zero columns span the kernel over Z.
    """
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns of u

    def colop(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src
        for r in a:
            r[dst] -= q * r[src]
        for r in u:
            r[dst] -= q * r[src]

    def swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    col = 0
    for row in range(len(a)):
        if col >= ncols:
            break
        while True:
            nz = [j for j in range(col, ncols) if a[row][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(a[row][j]))
            swap(col, j0)
            done = True
            for j in range(col + 1, ncols):
                if a[row][j]:
                    colop(j, col, a[row][j] // a[row][col])
                    if a[row][j]:
                        done = False
            if done:
                col += 1
                break
    return [tuple(u[i][j] for i in range(ncols)) for j in range(col, ncols)]


# --------------------------------------------------------------------------
# affine hulls


def affine_dimension(points: Iterable) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    pts, d = check_points(points)
    if not pts:
        return -1
    base = pts[0]
    return rank([sub(p, base) for p in pts[1:]])


@dataclass(frozen=True)
class AffineFlat:
    """Affine subspace basepoint + span(directions), directions a lattice basis."""

    basepoint: Point
    directions: tuple[Point, ...]
    normals: tuple[Point, ...]

    @property
    def dim(self) -> int:
        return len(self.directions)

    def contains(self, x: Sequence[int]) -> bool:
        diff = sub(x, self.basepoint)
        return all(dot(n, diff) == 0 for n in self.normals)


def affine_hull(points: Iterable) -> AffineFlat:
    pts, d = check_points(points)
    if not pts:
        raise InvalidInput("affine hull of the empty set")
    base = pts[0]
    diffs = [sub(p, base) for p in pts[1:]]
    idx = independent_subset(diffs)
    if not idx:
        normals = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
        return AffineFlat(base, (), normals)
    normals = tuple(nullspace([diffs[i] for i in idx], d))
    if normals:
        directions = tuple(integer_kernel_basis(normals, d))
    else:
        directions = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    return AffineFlat(base, directions, normals)


def in_affine_hull(x: Sequence[int], points: Sequence[Sequence[int]]) -> bool:
    if not points:
        return False
    base = points[0]
    diffs = [sub(p, base) for p in points[1:]]
    return rank(diffs + [sub(x, base)]) == rank(diffs)


# --------------------------------------------------------------------------
# half-spaces and polytopes


class HalfSpace(NamedTuple):
    """The closed half-space {x : normal . x <= offset}, normal primitive."""

    normal: Point
    offset: int

    def value(self, x: Sequence[int]) -> int:
        return dot(self.normal, x) - self.offset

    def contains(self, x: Sequence[int]) -> bool:
        return dot(self.normal, x) <= self.offset

    def is_tight(self, x: Sequence[int]) -> bool:
        return dot(self.normal, x) == self.offset


class Polytope:
    """A full-dimensional lattice polytope given by its exact vertex set.

    Instances are immutable. Vertices are sorted lexicographically and the
    facet list (irredundant, primitive normals, ``a.x <= b``) is computed on
    first access.
    """

    __slots__ = ("dim_ambient", "vertices", "_facets", "_vset", "_key")

    def __init__(self, vertices: Iterable[Point], dim_ambient: int,
                 facets: Sequence[HalfSpace] | None = None):
        # trusted constructor: callers guarantee the points are exactly the
        # vertex set of a full-dimensional polytope; use convex_hull otherwise
        self.vertices: tuple[Point, ...] = tuple(sorted(vertices))
        self.dim_ambient = dim_ambient
        self._facets = tuple(sorted(facets)) if facets is not None else None
        self._vset: frozenset[Point] | None = None
        self._key: str | None = None

    @property
    def dim(self) -> int:
        return self.dim_ambient

    @property
    def facets(self) -> tuple[HalfSpace, ...]:
        if self._facets is None:
            self._facets = tuple(_hull(list(self.vertices), self.dim_ambient)[1])
        return self._facets

    @property
    def vertex_set(self) -> frozenset[Point]:
        if self._vset is None:
            self._vset = frozenset(self.vertices)
        return self._vset

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim_ambient + 1

    def has_vertex(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.vertex_set

    def incident_facets(self, v: Sequence[int]) -> list[HalfSpace]:
        return [f for f in self.facets if f.is_tight(v)]

    def contains(self, x: Sequence[int]) -> bool:
        return all(dot(f.normal, x) <= f.offset for f in self.facets)

    def key(self) -> str:
        if self._key is None:
            self._key = canonical_key(self)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim_ambient == other.dim_ambient and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim_ambient, self.vertices))

    def __repr__(self):
        return f"Polytope(d={self.dim_ambient}, vertices={list(self.vertices)})"


def convex_hull(points: Iterable, d: int | None = None) -> Polytope:
    """Canonical full-dimensional polytope spanned by the given points."""
    pts, dd = check_points(points)
    if dd is None:
        raise NotFullDimensional("empty point set")
    if d is None:
        d = dd
    elif d != dd:
        raise InvalidInput(f"points have length {dd}, expected {d}")
    check_dim(d)
    pts = sorted(set(pts))
    if affine_dimension(pts) < d:
        raise NotFullDimensional(f"points span less than {d} dimensions")
    verts, facets = _hull(pts, d)
    return Polytope(verts, d, facets)


def check_dim(d: int) -> None:
    if not MIN_DIM <= d <= MAX_DIM:
        raise InvalidInput(f"ambient dimension {d} outside [{MIN_DIM}, {MAX_DIM}]")


def contains_point(P: Polytope, x: Iterable) -> bool:
    x = as_point(x)
    if len(x) != P.dim_ambient:
        raise InvalidInput(f"point of length {len(x)} in dimension {P.dim_ambient}")
    return P.contains(x)


_POINT_STR: dict[Point, str] = {}


def _point_str(v: Point) -> str:
    s = _POINT_STR.get(v)
    if s is None:
        if len(_POINT_STR) > 1 << 16:
            _POINT_STR.clear()
        s = _POINT_STR[v] = ",".join(map(str, v))
    return s


def canonical_key(P: Polytope) -> str:
    body = ";".join(map(_point_str, P.vertices))
    return f"{P.dim_ambient}|{body}"


def polytope_from_key(key: str) -> Polytope:
    """Inverse of canonical_key (vertex set trusted to be canonical)."""
    try:
        d_str, body = key.split("|", 1)
        d = int(d_str)
        verts = [tuple(int(c) for c in chunk.split(",")) for chunk in body.split(";")]
    except ValueError as exc:
        raise InvalidInput(f"malformed key {key!r}") from exc
    return Polytope(verts, d)


def cyclic_vertices(P: Polytope) -> list[Point]:
    """Counterclockwise vertex order of a polygon, starting at the lex-min vertex."""
    if P.dim_ambient != 2:
        raise InvalidInput("cyclic order is only defined for polygons")
    return _monotone_chain(list(P.vertices))


def orient2d(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> int:
    """Twice the signed area of (a, b, c); positive for a left turn."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


# --------------------------------------------------------------------------
# hull algorithms


def _hull(pts: list[Point], d: int) -> tuple[list[Point], list[HalfSpace]]:
    """Vertices and facets of a full-dimensional point set (sorted, unique)."""
    if d == 1:
        lo, hi = min(pts), max(pts)
        return [lo, hi], [HalfSpace((-1,), -lo[0]), HalfSpace((1,), hi[0])]
    if d == 2:
        ring = _monotone_chain(pts)
        facets = []
        for i, a in enumerate(ring):
            b = ring[(i + 1) % len(ring)]
            # ccw ring: interior on the left, outward normal is (dy, -dx)
            n = primitive((b[1] - a[1], a[0] - b[0]))
            facets.append(HalfSpace(n, dot(n, a)))
        return sorted(ring), sorted(facets)
    if len(pts) == d + 1:
        return list(pts), _simplex_facets(pts, d)
    return _incremental_hull(pts, d)


def _monotone_chain(pts: list[Point]) -> list[Point]:
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and orient2d(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient2d(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hyperplane(points: Sequence[Point], d: int, inner: Point, weight: int) -> HalfSpace:
    """Half-space through points (spanning a hyperplane) containing inner/weight."""
    base = points[0]
    n = integer_normal([sub(p, base) for p in points[1:]], d)
    b = dot(n, base)
    if dot(n, inner) > weight * b:
        n = tuple(-x for x in n)
        b = -b
    return HalfSpace(n, b)


def _pencil(f1: HalfSpace, f2: HalfSpace, p: Point) -> HalfSpace:
    """Hyperplane through the ridge aff(f1) & aff(f2) and the point p.

    Requires p beyond f1 and strictly beneath f2; the positive combination
    keeps the hull on the correct side.
    """
    s1 = dot(f1.normal, p) - f1.offset
    s2 = f2.offset - dot(f2.normal, p)
    n = [s2 * a + s1 * b for a, b in zip(f1.normal, f2.normal)]
    off = s2 * f1.offset + s1 * f2.offset
    g = reduce(gcd, n, 0)
    return HalfSpace(tuple(x // g for x in n), off // g)


def _simplex_facets(pts: Sequence[Point], d: int) -> list[HalfSpace]:
    inner = tuple(sum(c) for c in zip(*pts))
    w = d + 1
    facets = [_hyperplane([p for j, p in enumerate(pts) if j != i], d, inner, w)
              for i in range(len(pts))]
    return sorted(facets)


def _incremental_hull(pts: list[Point], d: int) -> tuple[list[Point], list[HalfSpace]]:
    # beneath-beyond with exact hyperplanes; facets are kept whole (not
    # triangulated) and keyed by their primitive (normal, offset)
    base_idx = [0]
    rows: list[Point] = []
    for i in range(1, len(pts)):
        diff = sub(pts[i], pts[0])
        if rank(rows + [diff]) > len(rows):
            rows.append(diff)
            base_idx.append(i)
            if len(base_idx) == d + 1:
                break
    simplex = [pts[i] for i in base_idx]
    inner = tuple(sum(c) for c in zip(*simplex))
    w = d + 1

    inc: dict[HalfSpace, set[int]] = {}
    for i in range(d + 1):
        ids = [base_idx[j] for j in range(d + 1) if j != i]
        inc[_hyperplane([pts[j] for j in ids], d, inner, w)] = set(ids)

    in_base = set(base_idx)
    for pi, p in enumerate(pts):
        if pi in in_base:
            continue
        visible = [f for f in inc if dot(f.normal, p) > f.offset]
        if not visible:
            continue
        vis_set = set(visible)
        others = [f for f in inc if f not in vis_set]
        created: dict[HalfSpace, set[int]] = {}
        extended: list[HalfSpace] = []
        for f1 in visible:
            s1 = inc[f1]
            for f2 in others:
                common = s1 & inc[f2]
                if len(common) < d - 1:
                    continue
                it = iter(common)
                b0 = pts[next(it)]
                if rank([sub(pts[j], b0) for j in it]) != d - 2:
                    continue
                if dot(f2.normal, p) == f2.offset:
                    extended.append(f2)
                    continue
                h = _pencil(f1, f2, p)
                created.setdefault(h, set()).update(common)
                created[h].add(pi)
        for f in visible:
            del inc[f]
        for f in extended:
            inc[f].add(pi)
        for h, ids in created.items():
            inc.setdefault(h, set()).update(ids)

    point_facets: dict[int, list[HalfSpace]] = {}
    for f, ids in inc.items():
        for j in ids:
            point_facets.setdefault(j, []).append(f)
    verts = [pts[j] for j, fs in point_facets.items()
             if len(fs) >= d and rank([f.normal for f in fs]) == d]
    return sorted(verts), sorted(inc)
