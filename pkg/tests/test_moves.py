import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from latmoves.constructions import (cartesian_product, corner_simplex, empty_simplex,
                                    pn_polygon, segment, unit_cube)
from latmoves.errors import IllegalMove, InvalidInput, NotAVertex, OutOfBox
from latmoves.kernel import affine_dimension, convex_hull
from latmoves.moves import (DELETE, INSERT, Move, MoveTrace, apply_delete,
                            apply_insert, can_delete, can_insert, deletable_vertices,
                            insertable_cells_2d, insertable_lattice_points_2d,
                            insertable_points, neighbors_in_box, vertex_cone)

SQ = unit_cube(2)
TRI = corner_simplex(2)
PYRAMID = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])


def test_vertex_cone_of_square():
    C = vertex_cone(SQ, (0, 0))
    assert C.contains((-1, -2))
    assert C.contains((0, 0))
    assert not C.contains((1, -1))
    assert sorted(h.normal for h in C.halfspaces) == [(0, 1), (1, 0)]
    with pytest.raises(NotAVertex):
        vertex_cone(SQ, (2, 2))


def test_product_cone_of_segments():
    P = cartesian_product(segment(0, 1), segment(0, 1))
    C = vertex_cone(P, (0, 0))
    c0 = vertex_cone(segment(0, 1), (0,))
    for z in itertools.product(range(-3, 4), repeat=2):
        assert C.contains(z) == (c0.contains(z[:1]) and c0.contains(z[1:]))


def test_can_insert_examples():
    assert can_insert(TRI, (1, 1))
    for x in itertools.product(range(-4, 6), repeat=2):
        assert not can_insert(SQ, x)
        assert not can_insert(pn_polygon(6), x)
    with pytest.raises(InvalidInput):
        can_insert(SQ, (0, 0, 0))


def test_can_delete_examples():
    assert not any(can_delete(TRI, v) for v in TRI.vertices)
    assert all(can_delete(SQ, v) for v in SQ.vertices)
    assert not can_delete(PYRAMID, (0, 0, 1))
    assert deletable_vertices(PYRAMID) == [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)]
    assert deletable_vertices(corner_simplex(4)) == []
    with pytest.raises(NotAVertex):
        can_delete(SQ, (3, 3))


def test_apply_moves():
    assert apply_insert(TRI, (1, 1)) == SQ
    assert apply_delete(SQ, (1, 1)) == TRI
    with pytest.raises(IllegalMove):
        apply_insert(SQ, (2, 2))
    with pytest.raises(IllegalMove):
        apply_delete(TRI, (0, 0))


def test_trace_replay_and_json():
    t = MoveTrace(TRI, [Move(INSERT, (1, 1)), Move(DELETE, (0, 0))])
    seq = t.replay(box=1)
    assert [P.n_vertices for P in seq] == [3, 4, 3]
    assert t.to_json()["moves"][0] == {"kind": "insert", "point": [1, 1]}
    with pytest.raises(IllegalMove):
        MoveTrace(TRI, [Move(DELETE, (0, 0))]).replay()


def test_insertable_points_examples():
    assert insertable_points(TRI, 1) == [(1, 1)]
    assert insertable_points(SQ, 1) == []
    S = empty_simplex(2)
    pts = insertable_points(S, 2)
    assert len(pts) == 23 and not set(pts) & set(S.vertices)
    with pytest.raises(OutOfBox):
        insertable_points(convex_hull([(0, 0), (2, 0), (0, 1)]), 1)


def test_neighbors_in_box_examples():
    assert [Q for _, Q in neighbors_in_box(TRI, 1)] == [SQ]
    assert len(neighbors_in_box(SQ, 1)) == 4
    assert neighbors_in_box(TRI, 1, {3}) == []


def test_cells_square_are_lattice_free_strips():
    cells = insertable_cells_2d(SQ)
    assert len(cells) == 4
    assert all(c.kind == "strip" and not c.has_lattice_point() for c in cells)
    assert insertable_lattice_points_2d(SQ) == []


def test_cells_hexagon_bounded_and_empty():
    cells = insertable_cells_2d(pn_polygon(6))
    assert len(cells) == 6
    assert all(c.bounded and c.lattice_points() == [] for c in cells)


def test_flat_pentagon_has_unbounded_cell():
    P = convex_hull([(0, 0), (1, 0), (2, 1), (2, 2), (1, 3)])
    assert any(not c.bounded for c in insertable_cells_2d(P))
    assert insertable_lattice_points_2d(P) is None


def test_triangle_cells():
    cells = insertable_cells_2d(TRI)
    assert {c.kind for c in cells} == {"wedge"}


# properties

def polytopes(draw_d=st.integers(2, 4), hi=5):
    @st.composite
    def build(draw):
        d = draw(draw_d)
        pts = draw(st.lists(st.tuples(*[st.integers(0, hi)] * d), min_size=d + 1,
                            max_size=d + 4, unique=True))
        if affine_dimension(pts) < d:
            pts = [tuple([0] * d)] + [tuple(int(i == j) for j in range(d)) for i in range(d)] + pts
        return convex_hull(pts)
    return build()


@settings(max_examples=80, deadline=None)
@given(polytopes(), st.data())
def test_can_insert_matches_definition(P, data):
    d = P.dim_ambient
    x = data.draw(st.tuples(*[st.integers(-2, 7)] * d))
    assert can_insert(P, x) == oracles.insertable(P.vertices, x)


@settings(max_examples=80, deadline=None)
@given(polytopes(), st.data())
def test_moves_invert(P, data):
    d = P.dim_ambient
    x = data.draw(st.tuples(*[st.integers(-2, 7)] * d))
    if can_insert(P, x):
        Q = apply_insert(P, x)
        assert can_delete(Q, x) and apply_delete(Q, x) == P
    for v in deletable_vertices(P):
        R = apply_delete(P, v)
        assert can_insert(R, v) and apply_insert(R, v) == P


@settings(max_examples=80, deadline=None)
@given(polytopes())
def test_deletable_matches_definition(P):
    d = P.dim_ambient
    dels = set(deletable_vertices(P))
    assert dels == {v for v in P.vertices if oracles.deletable(P.vertices, v)}
    assert P.n_vertices - len(dels) <= d + 1
    assert (not dels) == P.is_simplex()


@settings(max_examples=40, deadline=None)
@given(polytopes(st.just(2), hi=4), polytopes(st.just(2), hi=3))
def test_product_cones(P, Q):
    R = cartesian_product(P, Q)
    assert R.n_vertices == P.n_vertices * Q.n_vertices
    pts = list(itertools.product(range(-1, 6), range(-1, 6)))
    for u in P.vertices[:2]:
        for v in Q.vertices[:2]:
            C = vertex_cone(R, u + v)
            cu, cv = vertex_cone(P, u), vertex_cone(Q, v)
            for z in pts:
                for w in pts[::7]:
                    assert C.contains(z + w) == (cu.contains(z) and cv.contains(w))


@settings(max_examples=60, deadline=None)
@given(polytopes(st.just(2), hi=6))
def test_cells_agree_with_can_insert(P):
    cells = insertable_cells_2d(P)
    lo = [min(v[i] for v in P.vertices) for i in range(2)]
    hi = [max(v[i] for v in P.vertices) for i in range(2)]
    span = max(hi[0] - lo[0], hi[1] - lo[1])
    rng = range(-2 * span - 1, 3 * span + 2)
    for x in itertools.product(rng, rng):
        x = (x[0] + lo[0], x[1] + lo[1])
        assert any(c.contains(x) for c in cells) == can_insert(P, x)
    finite = insertable_lattice_points_2d(P)
    if finite is not None:
        assert all(can_insert(P, x) for x in finite)
