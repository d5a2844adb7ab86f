"""The three-dimensional algebra spanned by I, J and L for a strongly regular graph.

Every polynomial or analytic function of L, and every Gram matrix produced by
the relaxational dynamics on an SRG, stays inside span{I, J, L}; so the
distance multiset depends on (N, k, λ, μ) only.
"""

from __future__ import annotations

import dataclasses as dc
import logging

import numpy as np
import numpy.typing as npt

from .classical import laplacian
from .errors import ArgumentError
from .graph import Graph, SrgParams
from .linalg import DEFAULT_QUANTUM, CanonicalMultiset, FloatArray, canonical_multiset, scale_of

logger = logging.getLogger("isoscreen")

DEFAULT_ALGEBRA_REL_TOL = 1e-6


@dc.dataclass(frozen=True)
class AlgebraElement:
    """f·I + g·J + h·L for the SRG with parameters ``params``."""

    f: float
    g: float
    h: float
    params: SrgParams

    def __post_init__(self) -> None:
        if not np.all(np.isfinite([self.f, self.g, self.h])):
            raise ArgumentError("algebra coefficients must be finite")

    def to_matrix(self, lap: npt.ArrayLike) -> FloatArray:
        lap = np.asarray(lap, dtype=np.float64)
        n = self.params.n
        if lap.shape != (n, n):
            raise ArgumentError(f"Laplacian shape {lap.shape} does not match n={n}")
        return self.f * np.eye(n) + self.g * np.ones((n, n)) + self.h * lap

    def coefficients(self) -> tuple[float, float, float]:
        return (self.f, self.g, self.h)

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        return algebra_product(self, other)


@dc.dataclass(frozen=True)
class NotInAlgebra:
    """Largest deviation of the matrix from its best three-entry reconstruction."""

    residual: float


def algebra_product(r1: AlgebraElement, r2: AlgebraElement) -> AlgebraElement:
    """Product in coefficient form, using L² = −(k² − k(λ−μ+1) + μ)I + μJ + (2k+μ−λ)L and JL = 0."""
    if r1.params != r2.params:
        raise ArgumentError(f"parameter mismatch: {r1.params} vs {r2.params}")
    n, k, lam, mu = r1.params.as_tuple()
    hh = r1.h * r2.h
    return AlgebraElement(
        f=r1.f * r2.f - (k * k - k * (lam - mu + 1) + mu) * hh,
        g=r1.f * r2.g + r1.g * r2.f + n * r1.g * r2.g + mu * hh,
        h=r1.f * r2.h + r1.h * r2.f + (2 * k + mu - lam) * hh,
        params=r1.params,
    )


@dc.dataclass(frozen=True)
class Violation:
    identity: str
    a: int
    b: int
    expected: int
    actual: int

    def __str__(self) -> str:
        return f"{self.identity} at ({self.a + 1},{self.b + 1}): expected {self.expected}, got {self.actual}"


@dc.dataclass(frozen=True)
class IdentityReport:
    params: SrgParams
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _violations(
    name: str, expected: npt.NDArray[np.int64], actual: npt.NDArray[np.int64]
) -> list[Violation]:
    rows, cols = np.nonzero(expected != actual)
    return [
        Violation(name, int(a), int(b), int(expected[a, b]), int(actual[a, b]))
        for a, b in zip(rows, cols)
    ]


def verify_srg_identities(g: Graph, p: SrgParams) -> IdentityReport:
    """Check A² = kI + λA + μ(J−I−A), AJ = JA = kJ and J² = NJ exactly."""
    if p.n != g.n:
        raise ArgumentError(f"parameters {p} do not match a graph on {g.n} vertices")
    n, k, lam, mu = p.as_tuple()
    a = g.adjacency.astype(np.int64)
    i = np.eye(n, dtype=np.int64)
    j = np.ones((n, n), dtype=np.int64)

    violations: list[Violation] = []
    violations += _violations("A^2 = kI + lambda A + mu(J-I-A)", k * i + lam * a + mu * (j - i - a), a @ a)
    violations += _violations("AJ = kJ", k * j, a @ j)
    violations += _violations("JA = kJ", k * j, j @ a)
    violations += _violations("J^2 = NJ", n * j, j @ j)
    if violations:
        logger.debug("%d identity violations for %s", len(violations), p)
    return IdentityReport(p, tuple(violations))


def decompose_in_algebra(
    m: npt.ArrayLike,
    g: Graph,
    p: SrgParams,
    tol: float | None = None,
) -> AlgebraElement | NotInAlgebra:
    """Read (f, g, h) off one diagonal, one edge and one non-edge entry, then validate.

    The first diagonal entry, the lexicographically first edge and the first
    non-edge are used. ``tol`` defaults to 1e-6 of the matrix scale.
    """
    matrix = np.asarray(m, dtype=np.float64)
    if matrix.shape != (g.n, g.n):
        raise ArgumentError(f"matrix shape {matrix.shape} does not match n={g.n}")
    if p.n != g.n:
        raise ArgumentError(f"parameters {p} do not match a graph on {g.n} vertices")
    upper = np.triu(np.ones((g.n, g.n), dtype=bool), k=1)
    edges = np.argwhere(upper & (g.adjacency == 1))
    non_edges = np.argwhere(upper & (g.adjacency == 0))
    if len(edges) == 0 or len(non_edges) == 0:
        raise ArgumentError("decomposition needs at least one edge and one non-edge")

    diagonal = matrix[0, 0]
    edge_value = matrix[tuple(edges[0])]
    non_edge_value = matrix[tuple(non_edges[0])]
    g_coef = non_edge_value
    h = g_coef - edge_value
    f = diagonal - g_coef - p.k * h

    if tol is None:
        tol = DEFAULT_ALGEBRA_REL_TOL * scale_of(matrix)
    element = AlgebraElement(float(f), float(g_coef), float(h), p)
    residual = float(np.max(np.abs(matrix - element.to_matrix(laplacian(g)))))
    if residual > tol:
        return NotInAlgebra(residual)
    return element


def predicted_distance_multiset(
    e: AlgebraElement, quantum: float = DEFAULT_QUANTUM
) -> CanonicalMultiset:
    """Squared distances implied by S = fI + gJ + hL: d²_ab = 2(f + kh) + 2h·A_ab off the diagonal."""
    n, k = e.params.n, e.params.k
    base = 2.0 * (e.f + k * e.h)
    values = np.concatenate(
        [
            np.zeros(n),
            np.full(n * (n - k - 1), base),
            np.full(n * k, base + 2.0 * e.h),
        ]
    )
    return canonical_multiset(values, quantum)


def coefficients_from_distances(
    multiset: CanonicalMultiset, params: SrgParams
) -> tuple[float, float]:
    """Recover (f, h) from the non-edge group 2(f+kh) and the edge group 2(f+kh)+2h."""
    n, k = params.n, params.k
    if len(multiset) != n * n or not multiset.groups or multiset.groups[0][1] != n:
        raise ArgumentError(f"not a distance multiset of an SRG with parameters {params}")

    nonzero = multiset.groups[1:]
    if len(nonzero) == 1:
        value, _ = nonzero[0]
        return value / 2.0, 0.0
    if len(nonzero) != 2:
        raise ArgumentError(f"expected two nonzero distance groups, found {len(nonzero)}")
    if n * k == n * (n - k - 1):
        raise ArgumentError(
            f"edge and non-edge groups have equal multiplicity for {params}; cannot tell them apart"
        )
    by_count = {count: value for value, count in nonzero}
    try:
        non_edge, edge = by_count[n * (n - k - 1)], by_count[n * k]
    except KeyError:
        raise ArgumentError(
            f"group multiplicities {sorted(by_count)} do not match {params}"
        ) from None
    h = (edge - non_edge) / 2.0
    f = non_edge / 2.0 - k * h
    return f, h
