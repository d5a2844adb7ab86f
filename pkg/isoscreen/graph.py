"""Graphs, relabelings, strongly regular parameters and Latin-square graphs."""

from __future__ import annotations

import dataclasses as dc
import enum
import itertools
import logging
import typing as t

import numpy as np
import numpy.typing as npt

from .errors import ArgumentError

logger = logging.getLogger("isoscreen")

DEFAULT_MAX_N = 10


@dc.dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph stored as a read-only 0/1 adjacency matrix.

    Vertices are 0-based here; every file format and report is 1-based.
    """

    adjacency: npt.NDArray[np.int64]

    def __post_init__(self) -> None:
        matrix = np.array(self.adjacency, dtype=np.int64, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ArgumentError(f"adjacency must be square, got shape {matrix.shape}")
        if matrix.shape[0] < 1:
            raise ArgumentError("a graph needs at least one vertex")
        if not np.isin(matrix, (0, 1)).all():
            raise ArgumentError("adjacency entries must be 0 or 1")
        if np.any(np.diag(matrix)):
            raise ArgumentError("adjacency diagonal must be zero (no self-loops)")
        if not np.array_equal(matrix, matrix.T):
            raise ArgumentError("adjacency must be symmetric")
        matrix.setflags(write=False)
        object.__setattr__(self, "adjacency", matrix)

    @classmethod
    def from_edges(cls, n: int, edges: t.Iterable[tuple[int, int]]) -> Graph:
        """Build a graph from 0-based edges; repeated edges are idempotent."""
        if n < 1:
            raise ArgumentError("a graph needs at least one vertex")
        matrix = np.zeros((n, n), dtype=np.int64)
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ArgumentError(f"edge ({a}, {b}) out of range for n={n}")
            if a == b:
                raise ArgumentError(f"self-loop at vertex {a}")
            matrix[a, b] = matrix[b, a] = 1
        return cls(matrix)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(np.zeros((n, n), dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    def edges(self) -> list[tuple[int, int]]:
        """0-based edges (a, b) with a < b in lexicographic order."""
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(a), int(b)) for a, b in zip(rows, cols)]

    def degrees(self) -> npt.NDArray[np.int64]:
        return self.adjacency.sum(axis=1)

    def complement(self) -> Graph:
        return Graph(1 - self.adjacency - np.eye(self.n, dtype=np.int64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={len(self.edges())})"


@dc.dataclass(frozen=True)
class PermutationWitness:
    """Vertex bijection: vertex ``a`` is relabeled ``mapping[a]``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        mapping = tuple(int(v) for v in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ArgumentError(f"not a permutation of 0..{len(mapping) - 1}")
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def identity(cls, n: int) -> PermutationWitness:
        return cls(tuple(range(n)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> PermutationWitness:
        return cls(tuple(int(v) for v in rng.permutation(n)))

    def __len__(self) -> int:
        return len(self.mapping)

    def matrix(self) -> npt.NDArray[np.int64]:
        """Permutation matrix P with P[p(a), a] = 1, so A' = P A Pᵀ."""
        n = len(self.mapping)
        p = np.zeros((n, n), dtype=np.int64)
        p[list(self.mapping), list(range(n))] = 1
        return p


@dc.dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lambda_: int
    mu: int

    @property
    def is_feasible(self) -> bool:
        """Double counting of edges between a neighbourhood and its complement."""
        return (
            0 <= self.lambda_ < self.k < self.n
            and 0 <= self.mu <= self.k
            and self.k * (self.k - self.lambda_ - 1) == (self.n - self.k - 1) * self.mu
        )

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lambda_, self.mu)

    def __str__(self) -> str:
        return f"({self.n},{self.k},{self.lambda_},{self.mu})"


@dc.dataclass(frozen=True)
class LatinSquare:
    """Order-m Latin square, row-major, symbols 1..m."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        grid = tuple(tuple(int(v) for v in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        m = len(grid)
        symbols = set(range(1, m + 1))
        if m == 0:
            raise ArgumentError("Latin square must have order >= 1")
        for r, row in enumerate(grid, start=1):
            if len(row) != m:
                raise ArgumentError(f"row {r} has {len(row)} cells, expected {m}")
            if set(row) != symbols:
                raise ArgumentError(f"row {r} does not contain each of 1..{m} once")
        for c in range(m):
            if {row[c] for row in grid} != symbols:
                raise ArgumentError(
                    f"column {c + 1} does not contain each of 1..{m} once"
                )

    @property
    def m(self) -> int:
        return len(self.grid)


def apply_permutation(g: Graph, p: PermutationWitness) -> Graph:
    """Relabel ``g`` so that result[p(a)][p(b)] = g[a][b]."""
    if len(p) != g.n:
        raise ArgumentError(
            f"permutation has length {len(p)} but the graph has {g.n} vertices"
        )
    inverse = np.argsort(np.array(p.mapping))
    return Graph(g.adjacency[np.ix_(inverse, inverse)])


def detect_srg(g: Graph) -> SrgParams | None:
    """Return (n, k, λ, μ) when ``g`` is strongly regular, else None.

    Complete and edgeless graphs are rejected because one of λ, μ is undefined.
    """
    n = g.n
    if n < 3:
        return None
    degrees = g.degrees()
    k = int(degrees[0])
    if np.any(degrees != k) or k == 0 or k == n - 1:
        return None

    common = g.adjacency @ g.adjacency
    off_diagonal = ~np.eye(n, dtype=bool)
    adjacent = (g.adjacency == 1) & off_diagonal
    non_adjacent = (g.adjacency == 0) & off_diagonal
    lambdas = np.unique(common[adjacent])
    mus = np.unique(common[non_adjacent])
    if len(lambdas) != 1 or len(mus) != 1:
        return None

    params = SrgParams(n, k, int(lambdas[0]), int(mus[0]))
    logger.debug("Detected strongly regular graph %s", params)
    return params


def latin_square_graph(ls: LatinSquare) -> Graph:
    """Cells are vertices (row-major); adjacent iff same row, column or symbol."""
    m = ls.m
    cells = [(r, c, ls.grid[r][c]) for r in range(m) for c in range(m)]
    matrix = np.zeros((m * m, m * m), dtype=np.int64)
    for a, b in itertools.combinations(range(m * m), 2):
        ra, ca, sa = cells[a]
        rb, cb, sb = cells[b]
        if ra == rb or ca == cb or sa == sb:
            matrix[a, b] = matrix[b, a] = 1
    return Graph(matrix)


class Outcome(enum.StrEnum):
    ISOMORPHIC = "isomorphic"
    NON_ISOMORPHIC = "non-isomorphic"
    TOO_LARGE = "too-large"


@dc.dataclass(frozen=True)
class IsomorphismResult:
    outcome: Outcome
    witness: PermutationWitness | None = None


def refine_colors(g1: Graph, g2: Graph) -> tuple[list[int], list[int]]:
    """Joint colour refinement starting from degrees.

    Both graphs are refined together so equal colour ids mean the same
    iterated neighbour-degree signature in either graph.
    """
    adjacency = (g1.adjacency, g2.adjacency)
    colors = [list(map(int, g1.degrees())), list(map(int, g2.degrees()))]
    while True:
        signatures = [
            [
                (colors[side][v], tuple(sorted(colors[side][u] for u in np.flatnonzero(adjacency[side][v]))))
                for v in range(len(colors[side]))
            ]
            for side in (0, 1)
        ]
        palette = {sig: idx for idx, sig in enumerate(sorted(set(signatures[0]) | set(signatures[1])))}
        refined = [[palette[sig] for sig in signatures[side]] for side in (0, 1)]
        if len(set(refined[0]) | set(refined[1])) == len(set(colors[0]) | set(colors[1])):
            return refined[0], refined[1]
        colors = refined


def brute_force_isomorphic(
    g1: Graph, g2: Graph, max_n: int = DEFAULT_MAX_N
) -> IsomorphismResult:
    """Exhaustive isomorphism search pruned by colour refinement.

    Ground-truth oracle for small graphs; anything above ``max_n`` vertices is
    reported as TOO_LARGE rather than attempted.
    """
    if g1.n != g2.n:
        return IsomorphismResult(Outcome.NON_ISOMORPHIC)
    n = g1.n
    if n > max_n:
        return IsomorphismResult(Outcome.TOO_LARGE)

    colors1, colors2 = refine_colors(g1, g2)
    if sorted(colors1) != sorted(colors2):
        return IsomorphismResult(Outcome.NON_ISOMORPHIC)

    a1, a2 = g1.adjacency, g2.adjacency
    # Most constrained vertices first: smallest colour class, then highest degree.
    class_size = {c: colors1.count(c) for c in colors1}
    order = sorted(range(n), key=lambda v: (class_size[colors1[v]], -int(a1[v].sum()), v))
    mapping = [-1] * n
    used = [False] * n

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        v = order[depth]
        for w in range(n):
            if used[w] or colors2[w] != colors1[v]:
                continue
            if any(a1[v, u] != a2[w, mapping[u]] for u in order[:depth]):
                continue
            mapping[v], used[w] = w, True
            if extend(depth + 1):
                return True
            mapping[v], used[w] = -1, False
        return False

    if extend(0):
        return IsomorphismResult(Outcome.ISOMORPHIC, PermutationWitness(tuple(mapping)))
    return IsomorphismResult(Outcome.NON_ISOMORPHIC)
