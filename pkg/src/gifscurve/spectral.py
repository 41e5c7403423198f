"""Perron eigendata, dimension and Markov cylinder weights.

The measure vector v assigns each vertex the relative size of its invariant
set. It is pinned by the outgoing balance

    v_i = (1/lam) * sum over edges e out of i of v_target(e),

i.e. v is the positive eigenvector of the outgoing-count matrix (the
transpose of the associated matrix). That balance is exactly what lets the
recording intervals tile, so it is the one implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

import numpy as np

from .errors import NoConvergence, NotPrimitive
from .system import Edge, OrderedGifs, Walk, is_primitive, outgoing_count_matrix

# accept an eigenvalue as exactly rational when this close to an integer
INTEGER_SNAP = 1e-9


@dataclass(frozen=True)
class PerronData:
    """Spectral data of a validated system.

    lam            : spectral radius of the associated matrix
    measure_vector : positive vector v, normalized so max(v) = 1
    alpha          : d * log(lam) / log(q)
    weights        : per-edge Markov weight p_e = v_target / (lam * v_source)
    """

    lam: float
    measure_vector: np.ndarray
    alpha: float
    weights: dict[Edge, float]


def perron(m: np.ndarray, *, residual_tol: float = 1e-12,
           max_iterations: int = 10**5) -> tuple[float, np.ndarray]:
    """Spectral radius and positive solution of the outgoing balance.

    Power iteration runs on the transpose of `m` (the outgoing-count
    matrix) with Rayleigh-quotient stopping. When the eigenvalue lands
    within 1e-9 of an integer the result is re-derived exactly over the
    rationals, so integer spectra come out exact.

    Raises NotPrimitive when `m` is not primitive and NoConvergence when
    the iteration cap is hit.
    """
    m = np.asarray(m)
    if not is_primitive(m):
        raise NotPrimitive("matrix is not primitive")
    out = m.T.astype(float)
    n = out.shape[0]

    v = np.ones(n) / n
    lam = 0.0
    for _ in range(max_iterations):
        w = out @ v
        lam = float(v @ w) / float(v @ v)
        residual = float(np.max(np.abs(w - lam * v)))
        v = w / np.max(w)
        if residual <= residual_tol * lam:
            break
    else:
        raise NoConvergence(f"no convergence after {max_iterations} iterations")

    nearest = round(lam)
    if nearest >= 1 and abs(lam - nearest) < INTEGER_SNAP:
        exact = _rational_kernel_vector(m.T, nearest)
        if exact is not None:
            lam = float(nearest)
            v = exact
    return lam, v / np.max(v)


def _rational_kernel_vector(out, eigenvalue: int):
    """Positive kernel vector of (out - eigenvalue*I) over the rationals.

    Returns None when the kernel is trivial or not one-dimensional positive.
    """
    n = len(out)
    rows = [[Fraction(int(out[i][j])) - (eigenvalue if i == j else 0)
             for j in range(n)] for i in range(n)]
    # Gaussian elimination with column pivoting
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivot_cols]
    if len(free) != 1:
        return None
    fc = free[0]
    vec = [Fraction(0)] * n
    vec[fc] = Fraction(1)
    for row, pc in zip(rows, pivot_cols):
        vec[pc] = -row[fc]
    if any(x <= 0 for x in vec):
        vec = [-x for x in vec]
        if any(x <= 0 for x in vec):
            return None
    top = max(vec)
    return np.array([float(x / top) for x in vec])


def dimension(g: OrderedGifs, lam: float) -> float:
    """Similarity dimension d * ln(lam) / ln(q) of the invariant sets."""
    if lam <= 1.0 or g.det_q <= 1.0:
        raise ValueError("dimension needs lam > 1 and q > 1")
    return g.dimension * log(lam) / log(g.det_q)


def markov_weights(g: OrderedGifs, lam: float,
                   v: np.ndarray) -> dict[Edge, float]:
    """Per-edge probability weights; they sum to one at every vertex."""
    return {e: float(v[e.target - 1] / (lam * v[e.source - 1])) for e in g.edges}


def build_perron_data(g: OrderedGifs) -> PerronData:
    """Convenience: eigen-solve, dimension and weights in one go."""
    from .system import associated_matrix

    lam, v = perron(associated_matrix(g))
    return PerronData(
        lam=lam,
        measure_vector=v,
        alpha=dimension(g, lam),
        weights=markov_weights(g, lam, v),
    )


def cylinder_measure(pd: PerronData, vertex: int, w: Walk) -> float:
    """Measure of the cylinder of walk `w`: v_i times the weight product.

    Telescopes to v_terminal * lam^-|w|, which tests cross-check.
    """
    if w.start_vertex != vertex:
        raise ValueError("walk does not start at the given vertex")
    value = float(pd.measure_vector[vertex - 1])
    for e in w.edges:
        value *= pd.weights[e]
    return value
