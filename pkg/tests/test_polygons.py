import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from latmoves.constructions import pn_polygon, unit_cube
from latmoves.errors import NotAPentagon, NotFlat, NotStronglyFlat
from latmoves.graph import enumerate_polytopes
from latmoves.kernel import convex_hull, cyclic_vertices, dot
from latmoves.moves import apply_delete, apply_insert, can_insert
from latmoves.polygons import (flatten_pentagon, is_flat, is_oblique, make_strongly_flat,
                               shear_multiplier, shear_params, shear_to_oblique,
                               witness_holds)

FLAT5 = convex_hull([(0, 0), (1, 0), (2, 1), (2, 2), (1, 3)])


def flat_oracle(P, strict=False, bound=12):
    ring = cyclic_vertices(P)
    n = len(ring)
    pairs = [(ring[i], ring[(i + 1) % n]) for i in range(n)]
    pairs += [(b, a) for a, b in pairs]
    for a, b in pairs:
        others = [v for v in P.vertices if v not in (a, b)]
        for c in itertools.product(range(-bound, bound + 1), repeat=2):
            if c == (0, 0):
                continue
            lo, hi = dot(a, c), dot(b, c)
            if strict and all(lo < dot(v, c) < hi for v in others):
                return True
            if not strict and all(lo <= dot(v, c) <= hi for v in others):
                return True
    return False


def test_is_oblique_examples():
    assert is_oblique(convex_hull([(0, 0), (3, 3), (1, 2)])) in {((0, 0), (3, 3)), ((3, 3), (0, 0))}
    assert is_oblique(unit_cube(2)) is None
    assert is_oblique(pn_polygon(6)) is None


def test_flat_pentagon_example():
    w = is_flat(FLAT5)
    assert w is not None and witness_holds(FLAT5, w)
    assert not witness_holds(FLAT5, type(w)((0, 1), (0, 0), (1, 3)), strict=True)
    assert witness_holds(FLAT5, type(w)((0, 1), (0, 0), (1, 3)))


def test_oblique_implies_strongly_flat():
    P = convex_hull([(0, 0), (3, 3), (1, 2)])
    assert is_flat(P, strict=True) is not None


@pytest.mark.parametrize("strict", [False, True])
def test_is_flat_matches_bruteforce(strict):
    polys = enumerate_polytopes(2, 2)
    for P in polys:
        w = is_flat(P, strict)
        assert (w is not None) == flat_oracle(P, strict), P
        if w is not None:
            assert witness_holds(P, w, strict)


def test_flatten_examples():
    assert len(flatten_pentagon(FLAT5)) == 0
    with pytest.raises(NotAPentagon):
        flatten_pentagon(unit_cube(2))


def _two_move_flattenings(P, window):
    for x in window:
        if can_insert(P, x):
            Q = apply_insert(P, x)
            for v in P.vertices:
                R = apply_delete(Q, v)
                if R.n_vertices == 5 and is_flat(R):
                    return True
    return False


def test_flatten_non_flat_pentagon():
    window = list(itertools.product(range(-6, 13), repeat=2))
    found = 0
    for P in enumerate_polytopes(2, 3, {5}):
        if is_flat(P):
            continue
        assert _two_move_flattenings(P, window)  # a 2-move flattening exists
        t = flatten_pentagon(P)
        seq = t.replay()
        assert len(t) == 2 and seq[-1].n_vertices == 5 and is_flat(seq[-1])
        found += 1
        if found == 5:
            break
    assert found


def test_make_strongly_flat_example():
    t = make_strongly_flat(FLAT5)
    seq = t.replay()
    assert len(t) <= 8
    assert is_flat(seq[-1], strict=True)
    assert all(P.n_vertices == 5 for P in seq[::2])
    with pytest.raises(NotFlat):
        make_strongly_flat(pn_polygon(6))


def test_shear_to_oblique_example():
    R = make_strongly_flat(FLAT5).end()
    t = shear_to_oblique(R)
    seq = t.replay()
    assert is_oblique(seq[-1])
    assert {P.n_vertices for P in seq} <= {5, 6}
    with pytest.raises(NotStronglyFlat):
        shear_to_oblique(pn_polygon(6))


def test_shear_multiplier_thirds():
    phi = [Fraction(0), Fraction(1, 3), Fraction(5, 3), Fraction(8, 3), Fraction(10, 3)]
    qs = [(0, 0)] * 5
    assert shear_multiplier(phi, qs, (1, -1)) == 3
    # the first step must now move more than one unit in x
    qs = [(0, 0), (1, 0), (1, 0), (1, 0), (1, 0)]
    assert shear_multiplier(phi, qs, (1, -1)) == 6


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=5, max_size=12, unique=True))
def test_pipeline_stages_on_random_polygons(pts):
    try:
        P = convex_hull(pts)
    except Exception:
        return
    n = P.n_vertices
    if n < 5 or not is_flat(P):
        return
    t = make_strongly_flat(P)
    seq = t.replay()
    assert {Q.n_vertices for Q in seq} <= {n, n + 1}
    R = seq[-1]
    assert R.n_vertices == n and is_flat(R, strict=True)
    params, rs, S = shear_params(R)
    assert dot(params.u, params.c) == 0 and params.u[0] and params.u[1]
    assert all((params.k * f).denominator == 1 for f in params.phi)
    t2 = shear_to_oblique(R)
    seq2 = t2.replay()
    assert {Q.n_vertices for Q in seq2} <= {n, n + 1}
    assert is_oblique(seq2[-1])
