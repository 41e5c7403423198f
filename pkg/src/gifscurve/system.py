"""Ordered single-matrix graph-directed systems.

A system is a directed multigraph on vertices 1..N together with one
expanding matrix A. Every edge e carries a digit vector d_e and stands for
the contraction x -> A^-1 (x + d_e). Outgoing edges of each vertex are
totally ordered by rank, which induces the lexicographic order on walks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DepthOverflow, EmptyVertex, NonExpandingMatrix, RankGap

WALK_CAP = 10**7

# eigenvalue modulus must exceed 1 by at least this margin
EXPANDING_MARGIN = 1e-12


@dataclass(frozen=True)
class Edge:
    """One edge of the directed multigraph; identity is (source, rank)."""

    source: int
    target: int
    rank: int
    digit: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class OrderedGifs:
    """Validated ordered system; immutable after construction.

    All operations on it are pure reads, so instances may be shared freely
    between threads.
    """

    dimension: int
    matrix: np.ndarray
    matrix_inv: np.ndarray
    det_q: float
    vertex_count: int
    edges: tuple[Edge, ...]
    _outgoing: tuple[tuple[Edge, ...], ...]

    def outgoing(self, vertex: int) -> tuple[Edge, ...]:
        """Outgoing edges of `vertex` in rank order."""
        return self._outgoing[vertex - 1]

    def out_degree(self, vertex: int) -> int:
        return len(self._outgoing[vertex - 1])

    def edge(self, vertex: int, rank: int) -> Edge:
        return self._outgoing[vertex - 1][rank - 1]

    def apply_edge(self, e: Edge, x: np.ndarray) -> np.ndarray:
        """Evaluate the edge contraction A^-1 (x + d_e)."""
        return self.matrix_inv @ (np.asarray(x, dtype=float) + np.asarray(e.digit))


@dataclass(frozen=True)
class Walk:
    """Finite walk: consecutive edges must chain source-to-target."""

    start_vertex: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        v = self.start_vertex
        for e in self.edges:
            if e.source != v:
                raise ValueError(
                    f"edge {e.source}->{e.target} does not continue a walk at {v}"
                )
            v = e.target

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def terminal(self) -> int:
        return self.edges[-1].target if self.edges else self.start_vertex

    def ranks(self) -> tuple[int, ...]:
        return tuple(e.rank for e in self.edges)


def build_gifs(spec: dict) -> OrderedGifs:
    """Validate a structured description and return the system.

    `spec` carries: dimension (int), matrix (row-major list of d*d reals or
    nested rows), vertices (int), edges (ordered list of {from, to, digit}
    records, optionally with explicit ranks). Edge order within each source
    defines the ranks when no explicit rank is given.

    Raises NonExpandingMatrix, EmptyVertex or RankGap on invalid input.
    """
    d = int(spec["dimension"])
    n = int(spec["vertices"])
    a = np.asarray(spec["matrix"], dtype=float).reshape(d, d)

    eigenvalues = np.linalg.eigvals(a)
    min_modulus = float(np.min(np.abs(eigenvalues)))
    if min_modulus <= 1.0 + EXPANDING_MARGIN:
        raise NonExpandingMatrix(
            f"matrix must be expanding; smallest eigenvalue modulus {min_modulus:.6g}"
        )
    q = float(abs(np.linalg.det(a)))

    per_vertex: list[list[Edge]] = [[] for _ in range(n)]
    for record in spec["edges"]:
        src = int(record["from"])
        dst = int(record["to"])
        if not (1 <= src <= n and 1 <= dst <= n):
            raise RankGap(f"edge {src}->{dst} references a vertex outside 1..{n}")
        digit = tuple(float(x) for x in record["digit"])
        if len(digit) != d:
            raise RankGap(f"edge {src}->{dst} digit has length {len(digit)}, want {d}")
        if not all(np.isfinite(digit)):
            raise RankGap(f"edge {src}->{dst} digit is not finite")
        rank = int(record.get("rank", len(per_vertex[src - 1]) + 1))
        per_vertex[src - 1].append(Edge(src, dst, rank, digit))

    for i, lst in enumerate(per_vertex, start=1):
        if not lst:
            raise EmptyVertex(f"vertex {i} has no outgoing edge")
        lst.sort(key=lambda e: e.rank)
        if [e.rank for e in lst] != list(range(1, len(lst) + 1)):
            raise RankGap(f"vertex {i} ranks are not contiguous from 1")

    edges = tuple(e for lst in per_vertex for e in lst)
    return OrderedGifs(
        dimension=d,
        matrix=a,
        matrix_inv=np.linalg.inv(a),
        det_q=q,
        vertex_count=n,
        edges=edges,
        _outgoing=tuple(tuple(lst) for lst in per_vertex),
    )


def associated_matrix(g: OrderedGifs) -> np.ndarray:
    """Edge-count matrix M with M[i][j] = number of edges from j+1 to i+1."""
    m = np.zeros((g.vertex_count, g.vertex_count), dtype=np.int64)
    for e in g.edges:
        m[e.target - 1, e.source - 1] += 1
    return m


def outgoing_count_matrix(g: OrderedGifs) -> np.ndarray:
    """Transposed convention: entry [i][j] counts edges from i+1 to j+1."""
    return associated_matrix(g).T.copy()


def is_primitive(m: np.ndarray) -> bool:
    """Whether some power of the nonnegative matrix is entrywise positive.

    Uses boolean powers saturated at 1 up to the Wielandt bound (N-1)^2 + 1,
    which is exact for primitivity.
    """
    m = np.asarray(m)
    n = m.shape[0]
    if (m < 0).any():
        raise ValueError("matrix must be nonnegative")
    b = (m > 0).astype(np.int64)
    power = b
    for _ in range((n - 1) ** 2 + 1):
        if power.all():
            return True
        power = np.minimum(power @ b, 1)
    return bool(power.all())


def walk_counts(g: OrderedGifs, length: int) -> list[int]:
    """Number of walks of the given length from each vertex (exact integers)."""
    out = outgoing_count_matrix(g)
    counts = [1] * g.vertex_count
    for _ in range(length):
        counts = [int(sum(out[i, j] * counts[j] for j in range(g.vertex_count)))
                  for i in range(g.vertex_count)]
    return counts


def enumerate_walks(g: OrderedGifs, vertex: int, length: int,
                    cap: int = WALK_CAP) -> list[Walk]:
    """All walks of `length` from `vertex`, in lexicographic rank order."""
    if length < 1:
        raise ValueError("length must be >= 1")
    total = walk_counts(g, length)[vertex - 1]
    if total > cap:
        raise DepthOverflow(f"{total} walks exceed cap {cap}")

    walks: list[Walk] = []
    stack: list[Edge] = []

    def descend(v: int, remaining: int):
        if remaining == 0:
            walks.append(Walk(vertex, tuple(stack)))
            return
        for e in g.outgoing(v):
            stack.append(e)
            descend(e.target, remaining - 1)
            stack.pop()

    descend(vertex, length)
    return walks


def walk_affine_map(g: OrderedGifs, w: Walk) -> tuple[np.ndarray, np.ndarray]:
    """Composed contraction of the walk as (B, c) with x -> B x + c.

    Composition is left to right: the first edge's map is applied last,
    so B = A^-|w| and c accumulates the digits scale by scale.
    """
    b = np.eye(g.dimension)
    c = np.zeros(g.dimension)
    for e in reversed(w.edges):
        c = g.matrix_inv @ (c + np.asarray(e.digit))
        b = g.matrix_inv @ b
    return b, c


def apply_walk(g: OrderedGifs, w: Walk, x: np.ndarray) -> np.ndarray:
    """Image of x under the composed walk map, without forming the matrix."""
    y = np.asarray(x, dtype=float)
    for e in reversed(w.edges):
        y = g.apply_edge(e, y)
    return y
