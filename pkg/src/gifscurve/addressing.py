"""Symbolic addressing: extreme walks, head/tail points, chain condition.

The lowest (highest) walk from a vertex always takes the rank-1 (last-rank)
edge, so its vertex sequence is eventually periodic within N steps. Heads
and tails are the projection limits of those walks, computed exactly as
affine fixed points rather than by iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularSystem
from .system import Edge, OrderedGifs, Walk, walk_affine_map

FIXED_POINT_RESIDUAL = 1e-12


@dataclass(frozen=True)
class EventuallyPeriodicWalk:
    start_vertex: int
    preperiod: tuple[Edge, ...]
    cycle: tuple[Edge, ...]

    def prefix(self, length: int) -> Walk:
        """The first `length` edges as an ordinary walk."""
        edges = list(self.preperiod)
        while len(edges) < length:
            edges.extend(self.cycle)
        return Walk(self.start_vertex, tuple(edges[:length]))


@dataclass(frozen=True)
class ChainViolation:
    vertex: int
    lower_rank: int
    upper_rank: int
    gap: float


@dataclass(frozen=True)
class ChainReport:
    passed: bool
    max_gap: float
    tol: float
    violations: tuple[ChainViolation, ...]


@dataclass(frozen=True, eq=False)
class BoundaryData:
    """Heads/tails of every invariant set plus coarse geometry bounds."""

    heads: np.ndarray
    tails: np.ndarray
    lowest_cycles: tuple[EventuallyPeriodicWalk, ...]
    highest_cycles: tuple[EventuallyPeriodicWalk, ...]
    box_lo: np.ndarray
    box_hi: np.ndarray
    diameter: float

    def head(self, vertex: int) -> np.ndarray:
        return self.heads[vertex - 1]

    def tail(self, vertex: int) -> np.ndarray:
        return self.tails[vertex - 1]


def _extreme_walk(g: OrderedGifs, vertex: int, rank_pick) -> EventuallyPeriodicWalk:
    seen: dict[int, int] = {}
    edges: list[Edge] = []
    v = vertex
    while v not in seen:
        seen[v] = len(edges)
        outgoing = g.outgoing(v)
        e = outgoing[rank_pick(len(outgoing))]
        edges.append(e)
        v = e.target
    split = seen[v]
    return EventuallyPeriodicWalk(vertex, tuple(edges[:split]), tuple(edges[split:]))


def lowest_walk(g: OrderedGifs, vertex: int) -> EventuallyPeriodicWalk:
    """Deterministic rank-1 successor walk from `vertex`."""
    return _extreme_walk(g, vertex, lambda n: 0)


def highest_walk(g: OrderedGifs, vertex: int) -> EventuallyPeriodicWalk:
    """Deterministic last-rank successor walk from `vertex`."""
    return _extreme_walk(g, vertex, lambda n: n - 1)


def _point_of(g: OrderedGifs, epw: EventuallyPeriodicWalk) -> np.ndarray:
    cycle_walk = Walk(epw.cycle[0].source, epw.cycle)
    b, c = walk_affine_map(g, cycle_walk)
    try:
        x = np.linalg.solve(np.eye(g.dimension) - b, c)
    except np.linalg.LinAlgError as exc:  # cannot happen for expanding A
        raise SingularSystem(str(exc)) from exc
    if float(np.linalg.norm(x - (b @ x + c))) > FIXED_POINT_RESIDUAL:
        raise SingularSystem("cycle fixed point residual too large")
    for e in reversed(epw.preperiod):
        x = g.apply_edge(e, x)
    return x


def _bounding_box(g: OrderedGifs, heads: np.ndarray,
                  iterations: int = 256) -> tuple[np.ndarray, np.ndarray]:
    """Outer box of each invariant set by iterating the box dynamics.

    Interval arithmetic over-approximates images, so the limit boxes
    contain the true sets; convergence is geometric.
    """
    n, d = g.vertex_count, g.dimension
    lo = heads.copy()
    hi = heads.copy()
    abs_inv = np.abs(g.matrix_inv)
    for _ in range(iterations):
        new_lo = np.full((n, d), np.inf)
        new_hi = np.full((n, d), -np.inf)
        for e in g.edges:
            center = (lo[e.target - 1] + hi[e.target - 1]) / 2 + np.asarray(e.digit)
            half = (hi[e.target - 1] - lo[e.target - 1]) / 2
            img_center = g.matrix_inv @ center
            img_half = abs_inv @ half
            i = e.source - 1
            new_lo[i] = np.minimum(new_lo[i], img_center - img_half)
            new_hi[i] = np.maximum(new_hi[i], img_center + img_half)
        if np.allclose(new_lo, lo, atol=1e-14) and np.allclose(new_hi, hi, atol=1e-14):
            lo, hi = new_lo, new_hi
            break
        lo, hi = new_lo, new_hi
    return lo, hi


def head_tail(g: OrderedGifs) -> BoundaryData:
    """Solve every head and tail exactly and bound the sets' extent."""
    lows = tuple(lowest_walk(g, i) for i in range(1, g.vertex_count + 1))
    highs = tuple(highest_walk(g, i) for i in range(1, g.vertex_count + 1))
    heads = np.array([_point_of(g, w) for w in lows])
    tails = np.array([_point_of(g, w) for w in highs])
    lo, hi = _bounding_box(g, heads)
    # the iteration approaches the fixed box from inside; pad out float slack
    pad = 1e-9 * np.maximum(hi - lo, 1.0)
    lo, hi = lo - pad, hi + pad
    diameter = float(max(np.linalg.norm(hi[i] - lo[i]) for i in range(g.vertex_count)))
    return BoundaryData(
        heads=heads,
        tails=tails,
        lowest_cycles=lows,
        highest_cycles=highs,
        box_lo=lo,
        box_hi=hi,
        diameter=diameter,
    )


def check_chain_condition(g: OrderedGifs, bd: BoundaryData,
                          tol: float = 1e-9) -> ChainReport:
    """Adjacent-edge endpoint matching at every vertex.

    For every vertex and every pair of rank-adjacent outgoing edges e < f,
    the image of tail(target(e)) under e must equal the image of
    head(target(f)) under f. Failures are reported, not raised.
    """
    violations: list[ChainViolation] = []
    max_gap = 0.0
    for i in range(1, g.vertex_count + 1):
        outgoing = g.outgoing(i)
        for e, f in zip(outgoing, outgoing[1:]):
            left = g.apply_edge(e, bd.tail(e.target))
            right = g.apply_edge(f, bd.head(f.target))
            gap = float(np.linalg.norm(left - right))
            max_gap = max(max_gap, gap)
            if gap > tol:
                violations.append(ChainViolation(i, e.rank, f.rank, gap))
    return ChainReport(
        passed=not violations,
        max_gap=max_gap,
        tol=tol,
        violations=tuple(violations),
    )


def cylinder_radius(g: OrderedGifs, bd: BoundaryData, depth: int) -> float:
    """Euclidean radius bound of any depth-`depth` cylinder."""
    power = np.linalg.matrix_power(g.matrix_inv, depth)
    return float(np.linalg.norm(power, 2)) * bd.diameter


def project(g: OrderedGifs, w: Walk,
            bd: BoundaryData) -> tuple[np.ndarray, float]:
    """Anchor point of the walk's cylinder and a radius bound around it.

    The projection limit of every infinite extension of `w` lies within
    the returned radius of the returned point.
    """
    x = bd.head(w.terminal)
    for e in reversed(w.edges):
        x = g.apply_edge(e, x)
    return x, cylinder_radius(g, bd, len(w))
