"""Metropolis chain on the lattice polytopes of [0,k]^d.

One step draws a lattice point x of the box uniformly. If x is a deletable
vertex it is removed, if it is insertable it is added, otherwise the chain
holds. The move P -> Q through x is proposed with the same probability as
Q -> P through the same x, so the kernel is symmetric and the uniform
distribution is stationary on every connected component.

Random numbers come from numpy's PCG64 generator seeded with the given
64-bit integer.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TextIO

import numpy as np

from .constructions import corner_simplex
from .errors import InvalidInput
from .kernel import Point, Polytope, solve_rational
from .moves import box_points, can_delete, can_insert


def _toggle(P: Polytope, x: Point) -> Polytope:
    if x in P.vertex_set:
        if can_delete(P, x):
            return Polytope([u for u in P.vertices if u != x], P.dim_ambient)
        return P
    if can_insert(P, x):
        return Polytope(P.vertices + (x,), P.dim_ambient)
    return P


@dataclass
class ChainState:
    current: Polytope
    rng_seed: int
    step_count: int = 0
    k: int = 1
    d: int = 2
    rng: np.random.Generator | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.rng is None:
            self.rng = np.random.Generator(np.random.PCG64(self.rng_seed))
        self.points = list(box_points(self.d, self.k))


def initial_state(d: int, k: int, seed: int) -> ChainState:
    return ChainState(corner_simplex(d, k), seed, 0, k, d)


def mh_step(state: ChainState) -> ChainState:
    x = state.points[int(state.rng.integers(len(state.points)))]
    state.current = _toggle(state.current, x)
    state.step_count += 1
    return state


@dataclass
class Histogram:
    counts: dict[str, int] = field(default_factory=dict)
    total: int = 0

    def add(self, key: str, n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n
        self.total += n

    def merge(self, other: "Histogram") -> "Histogram":
        out = Histogram(dict(self.counts), self.total)
        for key, n in other.counts.items():
            out.counts[key] = out.counts.get(key, 0) + n
        out.total += other.total
        return out

    def frequencies(self) -> dict[str, Fraction]:
        return {key: Fraction(n, self.total) for key, n in self.counts.items()}

    def write_csv(self, fh: TextIO) -> None:
        w = csv.writer(fh)
        w.writerow(["canonical_key", "count"])
        for key in sorted(self.counts):
            w.writerow([key, self.counts[key]])


def run_chain(d: int, k: int, steps: int, burnin: int = 0, seed: int = 0) -> Histogram:
    """Histogram of the states after steps burnin+1 .. steps."""
    if not steps > burnin >= 0:
        raise InvalidInput("need steps > burnin >= 0")
    state = initial_state(d, k, seed)
    draws = state.rng.integers(len(state.points), size=steps)
    pts = state.points
    memo: dict[tuple[Polytope, int], Polytope] = {}
    cur = state.current
    counts: dict[Polytope, int] = {}
    for t, i in enumerate(draws.tolist()):
        nxt = memo.get((cur, i))
        if nxt is None:
            nxt = memo[(cur, i)] = _toggle(cur, pts[i])
        cur = nxt
        if t >= burnin:
            counts[cur] = counts.get(cur, 0) + 1
    h = Histogram()
    for P, n in counts.items():
        h.add(P.key(), n)
    return h


def tv_distance_to_uniform(h: Histogram, support_size: int) -> Fraction:
    """Total variation distance between the empirical and uniform distributions."""
    if support_size < len(h.counts) or support_size <= 0:
        raise InvalidInput("support smaller than the number of observed states")
    if h.total == 0:
        raise InvalidInput("empty histogram")
    u = Fraction(1, support_size)
    dist = sum(abs(Fraction(n, h.total) - u) for n in h.counts.values())
    dist += u * (support_size - len(h.counts))
    return dist / 2


def transition_matrix(states: list[Polytope], k: int) -> list[list[Fraction]]:
    """Exact one-step kernel on the given states (rows sum to 1)."""
    index = {P: i for i, P in enumerate(states)}
    d = states[0].dim_ambient
    pts = list(box_points(d, k))
    p = Fraction(1, len(pts))
    M = [[Fraction(0)] * len(states) for _ in states]
    for i, P in enumerate(states):
        for x in pts:
            Q = _toggle(P, x)
            if Q not in index:
                raise InvalidInput(f"state space not closed: {Q.key()}")
            M[i][index[Q]] += p
    return M


def stationary_distribution(M: list[list[Fraction]]) -> list[Fraction]:
    """Solve pi M = pi with sum(pi) = 1 exactly (irreducible chains)."""
    n = len(M)
    A = [[M[j][i] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    A[-1] = [Fraction(1)] * n
    rhs = [Fraction(0)] * (n - 1) + [Fraction(1)]
    pi = solve_rational(A, rhs)
    if pi is None:
        raise InvalidInput("stationary distribution is not unique")
    return pi
