"""Measure-preserving curve parametrizations of the invariant sets.

A parametrization maps the unit interval onto one invariant set by
composing the interval-address descent with the geometric cylinder maps:
the parameter picks a nested chain of sub-intervals, the matching chain of
cylinders shrinks to the image point. Construction refuses to run unless
the chain condition holds, since seam consistency at breakpoints is what
makes the map well defined.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .addressing import BoundaryData, ChainReport, check_chain_condition, head_tail
from .errors import ChainConditionUnverified, OutOfRange
from .pseudonorm import (
    PseudoNormEvaluator,
    bound_for_euclid_radius,
    omega_diameter,
    pseudo_norm_evaluator,
    pseudo_norm_many,
    quasi_triangle_beta,
)
from .recording import RecordingSystem, _pin, address_pair, build_recording
from .spectral import PerronData, build_perron_data
from .system import OrderedGifs, Walk

MAX_DESCENT_DEPTH = 4096


@dataclass(frozen=True, eq=False)
class CurveApproximation:
    """Ordered polyline of one generation of cylinder anchor points.

    Holds one point per walk of the generation, in lexicographic order,
    plus the closing tail point; `labels` are the walks themselves.
    """

    vertex: int
    depth: int
    points: np.ndarray
    labels: tuple[Walk, ...]


@dataclass(frozen=True)
class HolderEstimate:
    exponent_fit: float      # least-squares slope at small separations
    max_ratio: float         # worst gauge ratio against |x - y|^(1/alpha)
    constant_bound: float    # a priori bound the ratios must respect
    pairs: int
    seed: int


def holder_constant_bound(q: float, dimension: int, alpha: float,
                          beta_hat: float, diam_hat: float,
                          h_min: float) -> float:
    """A priori constant for the gauge modulus of continuity.

    Covers both exponent readings of the constant, taking whichever of
    (1/h)^(d/alpha) and (1/h)^(1/alpha) is larger; monotone decreasing in
    h_min either way.
    """
    inflation = max((1.0 / h_min) ** (dimension / alpha),
                    (1.0 / h_min) ** (1.0 / alpha))
    return beta_hat * diam_hat * q ** (1.0 / dimension) * inflation


class Parametrization:
    """Bundle of everything needed to evaluate the curve maps.

    Instances are immutable in use; evaluation methods are pure and safe
    to call concurrently.
    """

    def __init__(self, gifs: OrderedGifs, perron_data: PerronData,
                 boundary: BoundaryData, recording: RecordingSystem,
                 chain_report: ChainReport):
        if not chain_report.passed:
            raise ChainConditionUnverified(
                f"chain condition failed with max gap {chain_report.max_gap:.3g}"
            )
        self.gifs = gifs
        self.perron = perron_data
        self.boundary = boundary
        self.recording = recording
        self.chain_report = chain_report
        self._opnorms = [1.0]
        # per-level translation tables, grown on demand:
        # _shift[n][edge index within its source] = A^-n d_e contribution
        self._powers = [np.eye(gifs.dimension)]
        self._shifts: list[list[np.ndarray]] = [[]]
        self._edge_index = {}
        self._flat_digits = []
        for i in range(1, gifs.vertex_count + 1):
            for e in gifs.outgoing(i):
                self._edge_index[e] = len(self._flat_digits)
                self._flat_digits.append(np.asarray(e.digit, dtype=float))
        self._evaluator: PseudoNormEvaluator | None = None
        self._beta_hat: float | None = None
        self._diam_hat: float | None = None

    @classmethod
    def from_gifs(cls, g: OrderedGifs, chain_tol: float = 1e-9) -> "Parametrization":
        pd = build_perron_data(g)
        bd = head_tail(g)
        report = check_chain_condition(g, bd, chain_tol)
        rs = build_recording(g, pd)
        return cls(g, pd, bd, rs, report)

    # -- descent machinery -------------------------------------------------

    def _ensure_depth(self, n: int):
        while len(self._powers) <= n:
            power = self.gifs.matrix_inv @ self._powers[-1]
            self._powers.append(power)
            self._shifts.append([power @ d for d in self._flat_digits])
            self._opnorms.append(float(np.linalg.norm(power, 2)))

    def depth_for_tol(self, tol: float) -> int:
        """Smallest depth whose cylinder radius bound is at most tol."""
        if tol <= 0.0:
            raise ValueError("tol must be positive")
        diam = self.boundary.diameter
        n = 0
        while True:
            self._ensure_depth(n)
            if self._opnorms[n] * diam <= tol:
                return n
            n += 1
            if n > MAX_DESCENT_DEPTH:
                raise ValueError(f"tol {tol} needs depth beyond {MAX_DESCENT_DEPTH}")

    def _descend_anchor(self, vertex: int, t_measure: float,
                        depth: int) -> np.ndarray:
        """Follow the address of a measure-units parameter to its anchor."""
        rs = self.recording
        self._ensure_depth(depth)
        current = vertex
        t = t_measure
        c = np.zeros(self.gifs.dimension)
        for level in range(1, depth + 1):
            offs = rs.offsets[current - 1]
            k = min(max(bisect_right(offs, t) - 1, 0), len(offs) - 1)
            edge = self.gifs.outgoing(current)[k]
            t = (t - offs[k]) / rs.ratio
            t = _pin(min(max(t, 0.0), rs.length(edge.target)), rs.length(edge.target))
            c = c + self._shifts[level][self._edge_index[edge]]
            current = edge.target
        return self._powers[depth] @ self.boundary.head(current) + c

    def _anchor_of_walk(self, w: Walk) -> np.ndarray:
        n = len(w)
        self._ensure_depth(n)
        c = np.zeros(self.gifs.dimension)
        for level, e in enumerate(w.edges, start=1):
            c = c + self._shifts[level][self._edge_index[e]]
        return self._powers[n] @ self.boundary.head(w.terminal) + c

    def _tail_of_walk(self, w: Walk) -> np.ndarray:
        n = len(w)
        self._ensure_depth(n)
        c = np.zeros(self.gifs.dimension)
        for level, e in enumerate(w.edges, start=1):
            c = c + self._shifts[level][self._edge_index[e]]
        return self._powers[n] @ self.boundary.tail(w.terminal) + c

    # -- evaluation ---------------------------------------------------------

    def psi_measure(self, vertex: int, t: float, tol: float = 1e-9) -> np.ndarray:
        """Curve point for a parameter in measure units [0, v_i]."""
        v_i = self.recording.length(vertex)
        if t < -1e-12 * v_i or t > v_i * (1.0 + 1e-12):
            raise OutOfRange(f"t={t} outside [0, {v_i}]")
        t = min(max(t, 0.0), v_i)
        return self._descend_anchor(vertex, t, self.depth_for_tol(tol))

    def psi(self, vertex: int, t: float, tol: float = 1e-9) -> np.ndarray:
        """Curve point for a normalized parameter in [0, 1].

        Deterministic for a fixed tol: the descent runs to the first depth
        whose cylinder radius bound is at most tol and returns that
        cylinder's anchor. Parameters within float-snapping distance of a
        subdivision boundary evaluate on the boundary itself, which the
        chain condition makes seam-consistent.
        """
        if t < -1e-12 or t > 1.0 + 1e-12:
            raise OutOfRange(f"normalized t={t} outside [0, 1]")
        t = min(max(t, 0.0), 1.0)
        return self.psi_measure(vertex, t * self.recording.length(vertex), tol)

    def psi_two_sided(self, vertex: int, t: float,
                      tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
        """Left and right limits at a breakpoint of the normalized domain."""
        depth = self.depth_for_tol(tol)
        t_measure = min(max(t, 0.0), 1.0) * self.recording.length(vertex)
        left, right = address_pair(self.recording, vertex, t_measure, depth)
        return self._anchor_of_walk(left), self._anchor_of_walk(right)

    def curve(self, vertex: int, depth: int) -> CurveApproximation:
        """Generation-`depth` polyline through all cylinder anchors.

        Points appear in lexicographic walk order; the final point closes
        the polyline at the tail of the vertex set.
        """
        from .system import WALK_CAP, walk_counts

        if depth < 1:
            raise ValueError("depth must be >= 1")
        total = walk_counts(self.gifs, depth)[vertex - 1]
        if total > WALK_CAP:
            from .errors import DepthOverflow

            raise DepthOverflow(f"{total} walks exceed cap {WALK_CAP}")
        self._ensure_depth(depth)
        points = np.empty((total + 1, self.gifs.dimension))
        labels: list[Walk] = []
        stack: list = []
        row = 0

        def descend(v: int, c: np.ndarray, level: int):
            nonlocal row
            if level == depth:
                points[row] = self._powers[depth] @ self.boundary.head(v) + c
                labels.append(Walk(vertex, tuple(stack)))
                row += 1
                return
            for e in self.gifs.outgoing(v):
                stack.append(e)
                descend(e.target, c + self._shifts[level + 1][self._edge_index[e]],
                        level + 1)
                stack.pop()

        descend(vertex, np.zeros(self.gifs.dimension), 0)
        points[total] = self._tail_of_walk(labels[-1])
        return CurveApproximation(vertex, depth, points, tuple(labels))

    # -- regularity ---------------------------------------------------------

    def evaluator(self) -> PseudoNormEvaluator:
        if self._evaluator is None:
            self._evaluator = pseudo_norm_evaluator(self.gifs.matrix)
        return self._evaluator

    def beta_hat(self, samples: int = 20_000, seed: int = 42) -> float:
        if self._beta_hat is None:
            self._beta_hat = quasi_triangle_beta(self.evaluator(), samples, seed)
        return self._beta_hat

    def diameter_hat(self, depth: int = 3) -> float:
        """Upper bound on the largest gauge diameter of an invariant set."""
        if self._diam_hat is None:
            ev = self.evaluator()
            upper = max(
                omega_diameter(ev, self.gifs, i, depth, boundary=self.boundary,
                               beta_hat=self.beta_hat())[1]
                for i in range(1, self.gifs.vertex_count + 1)
            )
            # any difference of set points has Euclidean norm below the box
            # diameter, so the radius bound caps the gauge diameter directly
            crude = bound_for_euclid_radius(ev, self.boundary.diameter)
            self._diam_hat = min(upper, crude)
        return self._diam_hat

    def holder_bound(self) -> float:
        return holder_constant_bound(
            self.gifs.det_q, self.gifs.dimension, self.perron.alpha,
            self.beta_hat(), self.diameter_hat(),
            float(np.min(self.perron.measure_vector)),
        )

    def holder_empirical(self, vertex: int, pairs: int, seed: int, *,
                         separation_range: tuple[float, float] = (1e-10, 1e-4),
                         slope_cutoff: float = 1e-3,
                         tol: float | None = None) -> HolderEstimate:
        """Sampled two-channel regularity estimate of the curve map.

        Draws seeded parameter pairs at log-uniform separations (in measure
        units). The gauge channel maxes the ratio against separation^(1/alpha)
        and must stay below the a priori constant; the Euclidean channel fits
        the small-separation log-log slope.
        """
        if pairs < 1:
            raise ValueError("pairs must be positive")
        rng = np.random.default_rng(seed)
        v_i = self.recording.length(vertex)
        lo, hi = separation_range
        seps = 10.0 ** rng.uniform(np.log10(lo), np.log10(hi), size=pairs) * v_i
        starts = rng.uniform(0.0, 1.0, size=pairs) * (v_i - seps)
        if tol is None:
            tol = 0.01 * (lo * v_i) ** (1.0 / self.perron.alpha)
        depth = self.depth_for_tol(tol)

        images_a = np.empty((pairs, self.gifs.dimension))
        images_b = np.empty((pairs, self.gifs.dimension))
        for j in range(pairs):
            images_a[j] = self._descend_anchor(vertex, starts[j], depth)
            images_b[j] = self._descend_anchor(vertex, starts[j] + seps[j], depth)

        gauge = pseudo_norm_many(self.evaluator(), images_a - images_b)
        max_ratio = float(np.max(gauge / seps ** (1.0 / self.perron.alpha)))

        euclid = np.linalg.norm(images_a - images_b, axis=1)
        mask = (seps <= slope_cutoff) & (euclid > 0)
        slope = float(np.polyfit(np.log(seps[mask]), np.log(euclid[mask]), 1)[0])
        return HolderEstimate(
            exponent_fit=slope,
            max_ratio=max_ratio,
            constant_bound=self.holder_bound(),
            pairs=pairs,
            seed=seed,
        )
