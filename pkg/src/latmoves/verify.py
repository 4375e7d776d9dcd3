"""Desk-scale checks of the connectivity and insertion results.

Each suite returns a VerifyReport. A check carries a witness (a polytope in
JSON form, a point, or a count) so that a failure can be replayed by hand.
Suites are deterministic: fixed seeds and lexicographic tie-breaks.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .constructions import (cartesian_product, corner_simplex, pn_polygon,
                            saturating_polytope, unit_cube)
from .errors import InvalidInput, LatticeMovesError
from .graph import bfs_closure, connected_components, enumerate_polytopes
from .io import polytope_to_json
from .kernel import Polytope, convex_hull, rank, sub
from .moves import (apply_delete, apply_insert, box_points, can_delete,
                    can_insert, can_insert_by_hull, deletable_vertices,
                    insertable_lattice_points_2d, insertable_points, vertex_cone)
from .paths import find_simplex_insertion, simplex_to_corner_path
from .polygons import flatten_pentagon, is_flat, is_oblique, pentagon_pipeline
from .sampler import (run_chain, stationary_distribution, transition_matrix,
                      tv_distance_to_uniform)


@dataclass
class Check:
    description: str
    passed: bool
    witness: object = None


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, description: str, passed: bool, witness=None) -> bool:
        self.checks.append(Check(description, bool(passed), witness))
        return bool(passed)

    def to_json(self) -> dict:
        return {"suite": self.suite,
                "passed": self.passed,
                "elapsed": round(self.elapsed, 3),
                "checks": [{"description": c.description, "passed": c.passed,
                            "witness": c.witness} for c in self.checks]}

    def table(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} ({self.elapsed:.2f}s)"]
        for c in self.checks:
            lines.append(f"  {'ok  ' if c.passed else 'FAIL'}  {c.description}")
        return "\n".join(lines)


Progress = Callable[[str], None]


def _quiet(msg: str) -> None:
    pass


def stderr_progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _pj(P: Polytope) -> dict:
    return polytope_to_json(P)


def _filtered_closure_matches(rep, d, k, filt, enum, progress):
    want = {P.key() for P in enum if P.n_vertices in filt}
    G = bfs_closure(corner_simplex(d), k, filt)
    missing = sorted(want - set(G.nodes))
    rep.add(f"d={d} k={k}: vertex counts {sorted(filt)} induce a connected subgraph "
            f"({len(want)} nodes)", not missing and set(G.nodes) <= want,
            {"missing": missing[:1]} if missing else {"nodes": len(want)})


def _census(rep, d, k, filt, progress):
    progress(f"[{rep.suite}] enumerating polytopes in [0,{k}]^{d}")
    enum = enumerate_polytopes(d, k)
    progress(f"[{rep.suite}] {len(enum)} polytopes; BFS from the corner simplex")
    G = bfs_closure(corner_simplex(d), k)
    keys = {P.key() for P in enum}
    missing = sorted(keys - set(G.nodes))
    extra = sorted(set(G.nodes) - keys)
    rep.add(f"d={d} k={k}: BFS closure equals the enumeration ({len(enum)} polytopes)",
            not missing and not extra,
            {"missing": missing[:1], "extra": extra[:1]} if missing or extra
            else {"nodes": len(enum), "edges": G.n_edges()})
    bound = (k + 1) ** d
    worst = max(G.adjacency, key=lambda a: len(G.adjacency[a]))
    rep.add(f"d={d} k={k}: every degree at most (k+1)^d = {bound}",
            len(G.adjacency[worst]) <= bound, {"max_degree": len(G.adjacency[worst])})
    _filtered_closure_matches(rep, d, k, filt, enum, progress)
    return enum, G


def suite_connectivity_2d(rep, progress):
    enum, G = _census(rep, 2, 1, {3, 4}, progress)
    square = unit_cube(2).key()
    tris = [a for a in G.nodes if a != square]
    star = (len(G) == 5 and sorted(G.adjacency[square]) == sorted(tris)
            and all(G.adjacency[t] == [square] for t in tris))
    rep.add("d=2 k=1: 5 polytopes forming a star around the square", star,
            {"nodes": len(G), "components": len(connected_components(G))})
    for k in (2, 3):
        _census(rep, 2, k, {3, 4}, progress)


def suite_connectivity_3d(rep, progress):
    for d in (3, 4):
        _census(rep, d, 1, {d + 1, d + 2}, progress)


def _simplices(d, k):
    pts = list(box_points(d, k))
    for combo in itertools.combinations(pts, d + 1):
        if rank([sub(p, combo[0]) for p in combo[1:]]) == d:
            yield Polytope(combo, d)


def suite_simplex_insertion(rep, progress):
    for d, k in ((2, 2), (2, 3), (2, 4), (3, 1), (3, 2)):
        progress(f"[{rep.suite}] simplices in [0,{k}]^{d}")
        count, bad = 0, None
        for S in _simplices(d, k):
            count += 1
            ins = insertable_points(S, k)
            try:
                x = find_simplex_insertion(S, k)
            except LatticeMovesError:
                x = None
            if not ins or x not in ins:
                bad = {"simplex": _pj(S), "found": x}
                break
        rep.add(f"d={d} k={k}: every simplex admits the constructed insertion "
                f"({count} simplices)", bad is None, bad or {"simplices": count})


def whole_plane_component(P: Polytope, filt: set[int], limit: int = 10_000) -> list[Polytope]:
    """Component of P among polygons in Z^2 with vertex counts in ``filt``."""
    seen = {P.key(): P}
    queue = deque([P])
    while queue:
        cur = queue.popleft()
        ins = insertable_lattice_points_2d(cur)
        if ins is None:
            raise InvalidInput(f"{cur.key()} has infinitely many insertable points")
        nbrs = []
        if cur.n_vertices + 1 in filt:
            nbrs += [apply_insert(cur, x) for x in ins]
        if cur.n_vertices - 1 in filt:
            nbrs += [apply_delete(cur, v) for v in deletable_vertices(cur)]
        for Q in nbrs:
            if Q.key() not in seen:
                seen[Q.key()] = Q
                queue.append(Q)
                if len(seen) > limit:
                    raise InvalidInput("component exceeds the search limit")
    return sorted(seen.values(), key=lambda Q: Q.key())


def suite_pn_family(rep, progress):
    for n in (4, 6, 7, 8, 9, 10):
        P = pn_polygon(n)
        ins = insertable_lattice_points_2d(P)
        rep.add(f"P_{n}: {n} vertices, no lattice point of Z^2 insertable",
                P.n_vertices == n and ins == [],
                {"polytope": _pj(P), "insertable": ins})
    P = pn_polygon(10)
    bad = None
    for v in P.vertices:
        Q = apply_delete(P, v)
        ins = insertable_lattice_points_2d(Q)
        if ins != [v]:
            bad = {"deleted": list(v), "insertable": ins}
            break
    rep.add("P_10 minus any vertex: the deleted vertex is the only insertable point",
            bad is None, bad or {"vertices": P.n_vertices})
    comp = whole_plane_component(P, {9, 10})
    counts = sorted(Q.n_vertices for Q in comp)
    rep.add("P_10 component with vertex counts {9,10}: one decagon and ten enneagons",
            counts == [9] * 10 + [10], {"sizes": counts})


def suite_products(rep, progress):
    A, B = pn_polygon(6), unit_cube(2)
    P = cartesian_product(A, B)
    rep.add("P_6 x [0,1]^2 has 24 vertices", P.n_vertices == 24, {"vertices": P.n_vertices})
    # 3x-inflated bounding box of [0,2]^2 x [0,1]^2
    lo, hi = (-2, -2, -1, -1), (4, 4, 2, 2)
    box = list(itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))))
    progress(f"[{rep.suite}] testing {len(box)} lattice points")
    ins = [x for x in box if x not in P.vertex_set and can_insert(P, x)]
    rep.add("P_6 x [0,1]^2: no insertable lattice point in the 3x-inflated box",
            not ins, {"insertable": [list(x) for x in ins[:12]], "count": len(ins)})
    bad = None
    for u in A.vertices:
        CA = vertex_cone(A, u)
        for v in B.vertices:
            CB = vertex_cone(B, v)
            C = vertex_cone(P, u + v)
            for z in box:
                if C.contains(z) != (CA.contains(z[:2]) and CB.contains(z[2:])):
                    bad = {"vertex": list(u + v), "point": list(z)}
                    break
            if bad:
                break
        if bad:
            break
    rep.add("vertex cones of the product are products of the factor cones",
            bad is None, bad or {"points": len(box), "vertices": P.n_vertices})


def suite_saturating(rep, progress):
    d, k = 6, 2
    S = saturating_polytope(d, k)
    rep.add(f"saturating polytope d={d} k={k}: 16 vertices",
            S.n_vertices == (k + 2) ** (d // (k + 1)), {"vertices": S.n_vertices})
    dels = deletable_vertices(S)
    rep.add("every vertex is deletable", len(dels) == S.n_vertices,
            {"deletable": len(dels)})
    progress(f"[{rep.suite}] classifying the {(k + 1) ** d} points of [0,{k}]^{d}")
    others = [x for x in box_points(d, k) if x not in S.vertex_set]
    stuck = [x for x in others if not can_insert(S, x)]
    rep.add(f"all {len(others)} other points of the box are insertable", not stuck,
            {"stuck": [list(x) for x in stuck[:1]]} if stuck
            else {"classified": len(others) + S.n_vertices})


def suite_impossibility_2d(rep, progress):
    polys = enumerate_polytopes(2, 2)
    pts = list(box_points(2, 2))
    bad = None
    for P in polys:
        dels = set(deletable_vertices(P))
        blocked = [x for x in pts
                   if (x in P.vertex_set and x not in dels)
                   or (x not in P.vertex_set and not can_insert(P, x))]
        if not blocked:
            bad = _pj(P)
            break
    rep.add(f"every polygon in [0,2]^2 has a blocked box point ({len(polys)} polygons)",
            bad is None, bad or {"polygons": len(polys)})


def suite_pentagon_pipeline(rep, progress):
    pentagons = enumerate_polytopes(2, 3, {5})
    progress(f"[{rep.suite}] {len(pentagons)} pentagons in [0,3]^2")
    flat_bad = pipe_bad = None
    for P in pentagons:
        try:
            t1 = flatten_pentagon(P)
            if len(t1) > 2 or not is_flat(t1.end()):
                raise AssertionError("flattening")
        except (LatticeMovesError, AssertionError) as exc:
            flat_bad = flat_bad or {"polytope": _pj(P), "error": str(exc)}
            continue
        try:
            t = pentagon_pipeline(P)
            seq = t.replay()
            if any(Q.n_vertices not in (5, 6) for Q in seq) or not is_oblique(seq[-1]):
                raise AssertionError("vertex counts or final shape")
        except (LatticeMovesError, AssertionError) as exc:
            pipe_bad = pipe_bad or {"polytope": _pj(P), "error": str(exc)}
    rep.add("every pentagon in [0,3]^2 becomes flat within 2 moves",
            flat_bad is None, flat_bad or {"pentagons": len(pentagons)})
    rep.add("strongly flat and shear traces replay with 5 or 6 vertices throughout",
            pipe_bad is None, pipe_bad or {"pentagons": len(pentagons)})


def suite_sampler_uniformity(rep, progress, steps: int = 10**6, seed: int = 2024):
    states = enumerate_polytopes(2, 1)
    M = transition_matrix(states, 1)
    pi = stationary_distribution(M)
    rep.add("exact stationary vector of the d=2 k=1 chain is uniform",
            all(p == Fraction(1, 5) for p in pi), {"pi": [str(p) for p in pi]})
    for d in (2, 3):
        S = states if d == 2 else enumerate_polytopes(3, 1)
        T = M if d == 2 else transition_matrix(S, 1)
        sym = all(T[i][j] == T[j][i] for i in range(len(S)) for j in range(i))
        rep.add(f"d={d} k=1: transition kernel is symmetric ({len(S)} states)", sym,
                {"states": len(S)})
    progress(f"[{rep.suite}] running {steps} steps")
    h = run_chain(2, 1, steps, 0, seed)
    tv = tv_distance_to_uniform(h, len(states))
    rep.add(f"empirical TV distance to uniform < 0.02 after {steps} steps",
            tv < Fraction(1, 50) and len(h.counts) == 5,
            {"tv": float(tv), "seed": seed, "visited": len(h.counts)})


def _random_full_dim(rng, d, n, hi):
    while True:
        pts = {tuple(rng.randint(0, hi) for _ in range(d)) for _ in range(n)}
        pts = sorted(pts)
        if len(pts) > d and rank([sub(p, pts[0]) for p in pts[1:]]) == d:
            return convex_hull(pts, d)


def suite_move_engine(rep, progress, pairs: int = 10_000, seed: int = 7):
    rng = random.Random(seed)
    disagree = trip = nondel = None
    for i in range(pairs):
        d = rng.randint(2, 4)
        P = _random_full_dim(rng, d, rng.randint(d + 1, d + 5), 5)
        x = tuple(rng.randint(-2, 7) for _ in range(d))
        fast, slow = can_insert(P, x), can_insert_by_hull(P, x)
        if fast != slow and disagree is None:
            disagree = {"polytope": _pj(P), "point": list(x)}
        if fast and trip is None:
            Q = apply_insert(P, x)
            if not can_delete(Q, x) or apply_delete(Q, x) != P:
                trip = {"polytope": _pj(P), "point": list(x)}
        stuck = P.n_vertices - len(deletable_vertices(P))
        if stuck > d + 1 and nondel is None:
            nondel = {"polytope": _pj(P), "non_deletable": stuck}
    rep.add(f"cone test agrees with the hull definition on {pairs} random pairs",
            disagree is None, disagree)
    rep.add("insert then delete returns the original polytope", trip is None, trip)
    rep.add("at most d+1 vertices are non-deletable", nondel is None, nondel)


def suite_simplex_paths(rep, progress, samples: int = 200, seed: int = 11):
    rng = random.Random(seed)
    for d, k in ((2, 3), (3, 2)):
        bad = None
        for _ in range(samples):
            S = _random_full_dim(rng, d, d + 1, k)
            while S.n_vertices != d + 1:
                S = _random_full_dim(rng, d, d + 1, k)
            try:
                t = simplex_to_corner_path(S, k)
                seq = t.replay(box=k)
                if seq[-1] != corner_simplex(d) or any(Q.n_vertices not in (d + 1, d + 2) for Q in seq):
                    raise AssertionError("end or vertex counts")
            except (LatticeMovesError, AssertionError) as exc:
                bad = {"simplex": _pj(S), "error": str(exc)}
                break
        rep.add(f"d={d} k={k}: {samples} random simplices walk to the corner simplex",
                bad is None, bad or {"samples": samples, "seed": seed})


SUITES: dict[str, Callable] = {
    "connectivity-2d": suite_connectivity_2d,
    "connectivity-3d": suite_connectivity_3d,
    "simplex-insertion": suite_simplex_insertion,
    "pn-family": suite_pn_family,
    "products": suite_products,
    "saturating": suite_saturating,
    "impossibility-2d": suite_impossibility_2d,
    "pentagon-pipeline": suite_pentagon_pipeline,
    "sampler-uniformity": suite_sampler_uniformity,
    "move-engine": suite_move_engine,
    "simplex-paths": suite_simplex_paths,
}


def verify(suite: str, progress: Progress | None = None) -> VerifyReport:
    if suite not in SUITES:
        raise InvalidInput(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    rep = VerifyReport(suite)
    t0 = time.perf_counter()
    SUITES[suite](rep, progress or _quiet)
    rep.elapsed = time.perf_counter() - t0
    return rep
