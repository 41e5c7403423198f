"""The matrix-homogeneous pseudo-norm and quantities derived from it.

The gauge is a two-sided geometric series of shell indicators,

    |x|_w = sum over integer n of q^(-n/d) * [A^n x in V],

with V the shell between a reference ball B and its image A(B). When
B sits inside A(B) the shells A^-n(V) tile space around the origin, so
for x != 0 exactly one term of the series fires and the value is an exact
power of q^(1/d). The evaluator exploits that: it locates the crossover
index n* = max { n : A^n x in B } and returns q^(-(n*+1)/d).

The reference ball is the Euclidean unit ball whenever that nests; for
matrices where it does not, an adapted ellipsoid x^T P x < 1 with
P = sum_{j>=0} (A^-j)^T A^-j is used, which nests by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log

import numpy as np

from .errors import EpsOutOfRange, WindowExhausted

DEFAULT_WINDOW = 64


@dataclass(frozen=True, eq=False)
class PseudoNormEvaluator:
    matrix: np.ndarray
    matrix_inv: np.ndarray
    q: float
    dimension: int
    window_radius: int
    shape: np.ndarray        # P of the reference ellipsoid x^T P x < 1
    shape_factor: np.ndarray  # L with P = L^T L, so |x|_P = |L x|


def _nests(a: np.ndarray, p: np.ndarray) -> bool:
    """Whether the P-ball sits strictly inside its A-image."""
    a_inv = np.linalg.inv(a)
    m = a_inv.T @ p @ a_inv
    # largest generalized eigenvalue of (m, p) must be < 1
    top = np.max(np.linalg.eigvals(np.linalg.solve(p, m)).real)
    return bool(top < 1.0 - 1e-12)


def _adapted_shape(a: np.ndarray) -> np.ndarray:
    p = np.zeros_like(a, dtype=float)
    term = np.eye(a.shape[0])
    a_inv = np.linalg.inv(a)
    for _ in range(10_000):
        p += term
        term = a_inv.T @ term @ a_inv
        if np.max(np.abs(term)) < 1e-16:
            break
    return p


def pseudo_norm_evaluator(matrix, window_radius: int = DEFAULT_WINDOW) -> PseudoNormEvaluator:
    """Build an evaluator for the given expanding matrix."""
    a = np.asarray(matrix, dtype=float)
    d = a.shape[0]
    q = float(abs(np.linalg.det(a)))
    if q <= 1.0:
        raise ValueError("matrix must be expanding (|det| > 1)")
    p = np.eye(d)
    if not _nests(a, p):
        p = _adapted_shape(a)
        if not _nests(a, p):
            raise ValueError("could not construct a nested reference ball")
    return PseudoNormEvaluator(
        matrix=a,
        matrix_inv=np.linalg.inv(a),
        q=q,
        dimension=d,
        window_radius=window_radius,
        shape=p,
        shape_factor=np.linalg.cholesky(p).T,
    )


def _member(ev: PseudoNormEvaluator, y: np.ndarray) -> bool:
    return float(y @ ev.shape @ y) < 1.0


def _crossover(ev: PseudoNormEvaluator, x: np.ndarray) -> int:
    """Largest n with A^n x inside the reference ball.

    Starts from a magnitude-based guess and walks the monotone membership
    indicator; raises WindowExhausted when the walk leaves the window.
    """
    r = float(np.sqrt(x @ ev.shape @ x))
    guess = int(round(-ev.dimension * log(r) / log(ev.q))) if r > 0 else 0
    y = x.copy()
    for _ in range(abs(guess)):
        y = ev.matrix @ y if guess > 0 else ev.matrix_inv @ y
    n = guess
    if _member(ev, y):
        while _member(ev, ev.matrix @ y):
            y = ev.matrix @ y
            n += 1
            if n - guess > ev.window_radius:
                raise WindowExhausted(f"no crossover within window of {guess}")
    else:
        while not _member(ev, y):
            y = ev.matrix_inv @ y
            n -= 1
            if guess - n > ev.window_radius:
                raise WindowExhausted(f"no crossover within window of {guess}")
    return n


def pseudo_norm(ev: PseudoNormEvaluator, x) -> float:
    """Value of the gauge at x; zero exactly at the origin."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return 0.0
    n_star = _crossover(ev, x)
    return ev.q ** (-(n_star + 1) / ev.dimension)


def pseudo_norm_many(ev: PseudoNormEvaluator, xs) -> np.ndarray:
    """Vectorized gauge over the rows of `xs`."""
    xs = np.asarray(xs, dtype=float)
    values = np.zeros(len(xs))
    nonzero = np.any(xs != 0.0, axis=1)
    if not np.any(nonzero):
        return values
    pts = xs[nonzero]
    r = np.sqrt(np.einsum("ij,jk,ik->i", pts, ev.shape, pts))
    guesses = np.round(-ev.dimension * np.log(r) / log(ev.q)).astype(int)
    n_star = np.empty(len(pts), dtype=int)
    for guess in np.unique(guesses):
        mask = guesses == guess
        block = pts[mask]
        power = np.linalg.matrix_power(ev.matrix, guess) if guess >= 0 else \
            np.linalg.matrix_power(ev.matrix_inv, -guess)
        y = block @ power.T
        ns = np.full(len(block), guess)
        member = np.einsum("ij,jk,ik->i", y, ev.shape, y) < 1.0
        up = member.copy()
        steps = 0
        while np.any(up):
            y[up] = y[up] @ ev.matrix.T
            still = np.einsum("ij,jk,ik->i", y[up], ev.shape, y[up]) < 1.0
            ns[np.flatnonzero(up)[still]] += 1
            next_up = np.zeros_like(up)
            next_up[np.flatnonzero(up)[still]] = True
            up = next_up
            steps += 1
            if steps > ev.window_radius:
                raise WindowExhausted("no crossover within window")
        down = ~member
        steps = 0
        while np.any(down):
            y[down] = y[down] @ ev.matrix_inv.T
            ns[down] -= 1
            now_in = np.einsum("ij,jk,ik->i", y[down], ev.shape, y[down]) < 1.0
            still_out = np.zeros_like(down)
            still_out[np.flatnonzero(down)[~now_in]] = True
            down = still_out
            steps += 1
            if steps > ev.window_radius:
                raise WindowExhausted("no crossover within window")
        n_star[mask] = ns
    values[nonzero] = ev.q ** (-(n_star + 1) / ev.dimension)
    return values


def pseudo_norm_series(ev: PseudoNormEvaluator, x) -> float:
    """Literal truncated series evaluation; the slow reference form."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return 0.0
    total = 0.0
    active_at_edge = False
    for n in range(-ev.window_radius, ev.window_radius + 1):
        power = np.linalg.matrix_power(ev.matrix, n) if n >= 0 else \
            np.linalg.matrix_power(ev.matrix_inv, -n)
        y = power @ x
        inside_image = _member(ev, ev.matrix_inv @ y)
        inside_ball = _member(ev, y)
        if inside_image and not inside_ball:
            total += ev.q ** (-n / ev.dimension)
            if abs(n) == ev.window_radius:
                active_at_edge = True
    if active_at_edge:
        raise WindowExhausted("shell indicator active at window edge")
    return total


def quasi_triangle_beta(ev: PseudoNormEvaluator, samples: int,
                        seed: int = 42) -> float:
    """Empirical quasi-triangle constant over seeded random pairs.

    Scans |x+y|_w / max(|x|_w, |y|_w) over pairs drawn at mixed scales,
    including aligned and opposite pairs that stress the shell geometry.
    """
    if samples < 10**3:
        raise ValueError("need at least 1000 samples")
    rng = np.random.default_rng(seed)
    d = ev.dimension
    scales = 10.0 ** rng.uniform(-3, 3, size=(samples, 2))
    xs = rng.normal(size=(samples, d))
    ys = rng.normal(size=(samples, d))
    xs /= np.linalg.norm(xs, axis=1, keepdims=True)
    ys /= np.linalg.norm(ys, axis=1, keepdims=True)
    # make a slice of the pairs nearly parallel to sharpen the maximum
    par = slice(0, samples // 4)
    ys[par] = xs[par]
    xs *= scales[:, :1]
    ys *= scales[:, 1:]
    nx = pseudo_norm_many(ev, xs)
    ny = pseudo_norm_many(ev, ys)
    ns = pseudo_norm_many(ev, xs + ys)
    denom = np.maximum(nx, ny)
    keep = ns > 0
    return float(np.max(ns[keep] / denom[keep]))


def bound_for_euclid_radius(ev: PseudoNormEvaluator, radius: float) -> float:
    """A priori gauge bound valid for every x with |x| <= radius."""
    if radius <= 0:
        return 0.0
    n = int(ceil(-ev.dimension * log(radius) / log(ev.q)))

    def ok(k: int) -> bool:
        power = np.linalg.matrix_power(ev.matrix, k) if k >= 0 else \
            np.linalg.matrix_power(ev.matrix_inv, -k)
        return float(np.linalg.norm(ev.shape_factor @ power, 2)) * radius < 1.0

    for _ in range(4 * ev.window_radius):
        if ok(n):
            if not ok(n + 1):
                return ev.q ** (-(n + 1) / ev.dimension)
            n += 1
        else:
            n -= 1
    raise WindowExhausted("no crossover for radius bound")


def _max_pair_distance(points: np.ndarray) -> float:
    """Exact maximum pairwise Euclidean distance of a 2-D or small point set."""
    m = len(points)
    if m <= 2000 or points.shape[1] != 2:
        if m > 4000:
            idx = np.linspace(0, m - 1, 4000).astype(int)
            points = points[idx]
            m = len(points)
        best = 0.0
        for i in range(m):
            diff = points[i + 1:] - points[i]
            if len(diff):
                best = max(best, float(np.max(np.einsum("ij,ij->i", diff, diff))))
        return best ** 0.5
    hull = _convex_hull_2d(points)
    diff = hull[:, None, :] - hull[None, :, :]
    return float(np.sqrt(np.max(np.einsum("ijk,ijk->ij", diff, diff))))


def _convex_hull_2d(points: np.ndarray) -> np.ndarray:
    pts = np.unique(points, axis=0)
    if len(pts) <= 2:
        return pts
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                u = out[-1] - out[-2]
                w = p - out[-2]
                if u[0] * w[1] - u[1] * w[0] > 0:
                    break
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def max_pairwise_pseudo_norm(ev: PseudoNormEvaluator, points: np.ndarray) -> float:
    """Exact max of |x - y|_w over all pairs of rows of `points`.

    Works shell by shell: the pair with the largest gauge is the pair whose
    difference leaves the reference ball earliest under powers of A, which
    reduces to Euclidean diameters of linearly transformed copies.
    """
    points = np.asarray(points, dtype=float)
    diam0 = _max_pair_distance(points @ ev.shape_factor.T)
    if diam0 == 0.0:
        return 0.0
    n = int(round(-ev.dimension * log(diam0) / log(ev.q)))

    def spread_reaches_one(k: int) -> bool:
        power = np.linalg.matrix_power(ev.matrix, k) if k >= 0 else \
            np.linalg.matrix_power(ev.matrix_inv, -k)
        return _max_pair_distance(points @ (ev.shape_factor @ power).T) >= 1.0

    for _ in range(4 * ev.window_radius):
        if spread_reaches_one(n):
            if not spread_reaches_one(n - 1):
                # smallest crossover among pairs is n - 1
                return ev.q ** (-n / ev.dimension)
            n -= 1
        else:
            n += 1
    raise WindowExhausted("no crossover for pairwise maximum")


def omega_diameter(ev: PseudoNormEvaluator, g, vertex: int, depth: int, *,
                   boundary=None, beta_hat: float | None = None,
                   beta_samples: int = 2000) -> tuple[float, float]:
    """Lower and upper bound for the gauge diameter of one invariant set.

    Lower: exact max pairwise gauge distance over depth-`depth` cylinder
    anchors. Upper: quasi-triangle inflation of the lower bound plus twice
    the worst cylinder gauge radius at that depth.
    """
    from .addressing import head_tail, project
    from .system import enumerate_walks

    if depth < 1:
        raise ValueError("depth must be >= 1")
    bd = boundary if boundary is not None else head_tail(g)
    if beta_hat is None:
        beta_hat = quasi_triangle_beta(ev, beta_samples)
    anchors = np.array([project(g, w, bd)[0]
                        for w in enumerate_walks(g, vertex, depth)])
    lower = max_pairwise_pseudo_norm(ev, anchors)
    d_hat = bound_for_euclid_radius(ev, bd.diameter)
    upper = beta_hat * (lower + 2.0 * ev.q ** (-depth / ev.dimension) * d_hat)
    return lower, upper


@dataclass(frozen=True)
class ComparabilityReport:
    constant: float
    exponent_large: float   # exponent active for |x| > 1
    exponent_small: float   # exponent active for |x| <= 1
    samples: int
    violations: int
    seed: int


def comparability_check(ev: PseudoNormEvaluator, eps: float, samples: int,
                        seed: int = 7) -> ComparabilityReport:
    """Fit the smallest envelope constant against the Euclidean norm.

    Both power-law branches are checked on log-uniform radii, including
    exact unit-norm points where the branches meet. The fitted constant
    makes all inequalities hold by construction, so a valid evaluator
    reports zero violations.
    """
    moduli = np.abs(np.linalg.eigvals(ev.matrix))
    lam_max, lam_min = float(np.max(moduli)), float(np.min(moduli))
    if not 0.0 < eps < lam_min - 1.0:
        raise EpsOutOfRange(f"eps must lie in (0, {lam_min - 1.0})")
    s_large = log(ev.q) / (ev.dimension * log(lam_max + eps))
    s_small = log(ev.q) / (ev.dimension * log(lam_min - eps))

    rng = np.random.default_rng(seed)
    dirs = rng.normal(size=(samples, ev.dimension))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    radii = 10.0 ** rng.uniform(-6, 6, size=samples)
    radii[: max(8, samples // 100)] = 1.0  # pin the branch boundary
    xs = dirs * radii[:, None]

    gauge = pseudo_norm_many(ev, xs)
    euclid = np.linalg.norm(xs, axis=1)
    big = euclid > 1.0
    c = 1.0
    # |x| > 1 : euclid^s_large <= C*gauge and gauge <= C*euclid^s_small
    c = max(c, float(np.max(euclid[big] ** s_large / gauge[big], initial=1.0)))
    c = max(c, float(np.max(gauge[big] / euclid[big] ** s_small, initial=1.0)))
    # |x| <= 1 : exponents swap roles
    sml = ~big
    c = max(c, float(np.max(euclid[sml] ** s_small / gauge[sml], initial=1.0)))
    c = max(c, float(np.max(gauge[sml] / euclid[sml] ** s_large, initial=1.0)))

    viol = 0
    viol += int(np.sum(euclid[big] ** s_large > c * gauge[big] * (1 + 1e-12)))
    viol += int(np.sum(gauge[big] > c * euclid[big] ** s_small * (1 + 1e-12)))
    viol += int(np.sum(euclid[sml] ** s_small > c * gauge[sml] * (1 + 1e-12)))
    viol += int(np.sum(gauge[sml] > c * euclid[sml] ** s_large * (1 + 1e-12)))
    return ComparabilityReport(
        constant=c,
        exponent_large=s_large,
        exponent_small=s_small,
        samples=samples,
        violations=viol,
        seed=seed,
    )
