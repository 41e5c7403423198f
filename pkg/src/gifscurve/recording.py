"""The interval mirror of a system: measures recorded as lengths.

Each vertex i gets an interval [0, v_i]; each outgoing edge an affine
contraction t -> t/lam + b_k whose images tile the interval in rank order.
Inverting the greedy tiling descent turns a parameter into a symbolic
address, which is what the parametrization composes with the geometry.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import NotABreakpoint, OutOfRange
from .spectral import PerronData
from .system import OrderedGifs, Walk

# proximity (relative to the interval length) at which a parameter is
# considered to sit on a subdivision boundary
BREAKPOINT_SNAP = 1e-12

# the greedy descent multiplies rounding error by lam per level; residuals
# this close (relative) to an interval end are re-pinned to the exact end,
# which keeps boundary-exact parameters exact at any depth
DESCENT_SNAP = 1e-12


def _pin(residual: float, length: float) -> float:
    if residual <= DESCENT_SNAP * length:
        return 0.0
    if residual >= length * (1.0 - DESCENT_SNAP):
        return length
    return residual


@dataclass(frozen=True, eq=False)
class RecordingSystem:
    """Interval lengths, per-vertex offsets and breakpoints; immutable."""

    gifs: OrderedGifs
    lengths: np.ndarray
    ratio: float                       # common contraction 1/lam
    offsets: tuple[tuple[float, ...], ...]
    breakpoints: tuple[tuple[float, ...], ...]

    def length(self, vertex: int) -> float:
        return float(self.lengths[vertex - 1])


def build_recording(g: OrderedGifs, pd: PerronData) -> RecordingSystem:
    """Lay the sub-intervals of every vertex end to end in rank order."""
    ratio = 1.0 / pd.lam
    v = pd.measure_vector
    offsets: list[tuple[float, ...]] = []
    breakpoints: list[tuple[float, ...]] = []
    for i in range(1, g.vertex_count + 1):
        b = 0.0
        offs: list[float] = []
        ends: list[float] = []
        for e in g.outgoing(i):
            offs.append(b)
            b += ratio * float(v[e.target - 1])
            ends.append(b)
        if abs(b - float(v[i - 1])) > 1e-12 * float(v[i - 1]):
            raise ValueError(
                f"sub-intervals of vertex {i} sum to {b}, expected {v[i - 1]}"
            )
        offsets.append(tuple(offs))
        breakpoints.append(tuple(ends))
    return RecordingSystem(
        gifs=g,
        lengths=np.asarray(v, dtype=float).copy(),
        ratio=ratio,
        offsets=tuple(offsets),
        breakpoints=tuple(breakpoints),
    )


def address_of(rs: RecordingSystem, vertex: int, t: float,
               depth: int) -> tuple[Walk, float]:
    """Walk of length `depth` whose interval contains t, plus the residual.

    Intervals are left-closed, right-open, with the last one closed, so
    breakpoints resolve rightward and t = v_i takes the last edge all the
    way down. Raises OutOfRange for t outside [0, v_i].
    """
    v_i = rs.length(vertex)
    if t < -BREAKPOINT_SNAP * v_i or t > v_i * (1.0 + BREAKPOINT_SNAP):
        raise OutOfRange(f"t={t} outside [0, {v_i}]")
    t = min(max(t, 0.0), v_i)
    edges = []
    current = vertex
    for _ in range(depth):
        offs = rs.offsets[current - 1]
        k = min(max(bisect_right(offs, t) - 1, 0), len(offs) - 1)
        edge = rs.gifs.outgoing(current)[k]
        t = (t - offs[k]) / rs.ratio
        t = _pin(min(max(t, 0.0), rs.length(edge.target)), rs.length(edge.target))
        edges.append(edge)
        current = edge.target
    return Walk(vertex, tuple(edges)), t


def _snapped_descend(rs: RecordingSystem, vertex: int, t: float, depth: int,
                     side: str) -> tuple[Walk, bool]:
    """Descent that treats near-boundary residuals as exactly on boundary.

    `side` decides which neighbour of a hit boundary is taken; returns the
    walk and whether any boundary was engaged at some level.
    """
    edges = []
    current = vertex
    residual = t
    engaged = False
    for _ in range(depth):
        offs = rs.offsets[current - 1]
        scale = rs.length(current)
        snap = BREAKPOINT_SNAP * scale
        k = min(max(bisect_right(offs, residual) - 1, 0), len(offs) - 1)

        boundary = None
        if k >= 1 and abs(residual - offs[k]) <= snap:
            boundary = k
        elif k + 1 < len(offs) and abs(offs[k + 1] - residual) <= snap:
            boundary = k + 1

        if boundary is not None:
            engaged = True
            if side == "right":
                k = boundary
                residual = 0.0
            else:
                k = boundary - 1
                residual = rs.length(rs.gifs.outgoing(current)[k].target)
        elif abs(residual - scale) <= snap:
            # right end of the whole interval: inherited from an ancestor
            engaged = True
            k = len(offs) - 1
            residual = rs.length(rs.gifs.outgoing(current)[k].target)
        elif residual <= snap:
            engaged = True
            k = 0
            residual = 0.0
        else:
            edge = rs.gifs.outgoing(current)[k]
            residual = (residual - offs[k]) / rs.ratio
            residual = min(max(residual, 0.0), rs.length(edge.target))
        edge = rs.gifs.outgoing(current)[k]
        edges.append(edge)
        current = edge.target
    return Walk(vertex, tuple(edges)), engaged


def address_pair(rs: RecordingSystem, vertex: int, t: float,
                 depth: int) -> tuple[Walk, Walk]:
    """Left-limit and right-limit addresses at a subdivision breakpoint.

    Requires t to lie within snapping distance of a breakpoint of depth
    <= `depth` (the endpoints 0 and v_i count); otherwise NotABreakpoint.
    At the endpoints both walks coincide.
    """
    v_i = rs.length(vertex)
    if t < -BREAKPOINT_SNAP * v_i or t > v_i * (1.0 + BREAKPOINT_SNAP):
        raise OutOfRange(f"t={t} outside [0, {v_i}]")
    t = min(max(t, 0.0), v_i)
    left, engaged_l = _snapped_descend(rs, vertex, t, depth, "left")
    right, engaged_r = _snapped_descend(rs, vertex, t, depth, "right")
    if not (engaged_l or engaged_r):
        raise NotABreakpoint(f"t={t} is not within snap of a depth-{depth} breakpoint")
    return left, right


def breakpoints_upto(rs: RecordingSystem, vertex: int, depth: int) -> np.ndarray:
    """All subdivision points of the vertex interval down to `depth`.

    Includes the endpoints 0 and v_i; values are deduplicated.
    """
    points = {0.0, rs.length(vertex)}

    def collect(current: int, offset: float, scale: float, remaining: int):
        if remaining == 0:
            return
        offs = rs.offsets[current - 1]
        for k, e in enumerate(rs.gifs.outgoing(current)):
            start = offset + scale * offs[k]
            if k >= 1:
                points.add(start)
            collect(e.target, start, scale * rs.ratio, remaining - 1)

    collect(vertex, 0.0, 1.0, depth)
    return np.array(sorted(points))
