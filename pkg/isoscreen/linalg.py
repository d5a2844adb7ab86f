"""Dense symmetric eigensystems, matrix functions and canonical multisets."""

from __future__ import annotations

import dataclasses as dc
import logging
import math
import typing as t

import numpy as np
import numpy.typing as npt

from .errors import ArgumentError, ConvergenceError

logger = logging.getLogger("isoscreen")

DEFAULT_QUANTUM = 1e-9
DEFAULT_TOL = 1e-8

JACOBI_MAX_SWEEPS = 100
JACOBI_REL_TOL = 1e-12

EigenMethod = t.Literal["lapack", "jacobi"]

FloatArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]


def symmetric_matrix(m: npt.ArrayLike) -> FloatArray:
    """Validate a square finite real matrix and return its exact symmetrization."""
    matrix = np.asarray(m, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ArgumentError(f"expected a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] < 1:
        raise ArgumentError("matrix dimension must be at least 1")
    if not np.all(np.isfinite(matrix)):
        raise ArgumentError("matrix has non-finite entries")
    return (matrix + matrix.T) / 2


@dc.dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues ascending; ``vectors[:, i]`` belongs to ``values[i]``."""

    values: FloatArray
    vectors: FloatArray

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def reconstruct(self) -> FloatArray:
        return (self.vectors * self.values) @ self.vectors.T


def _off_diagonal_norm(a: FloatArray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi(matrix: FloatArray) -> tuple[FloatArray, FloatArray]:
    """Cyclic Jacobi rotations in fixed (p, q) order."""
    a = matrix.copy()
    n = a.shape[0]
    v = np.eye(n)
    threshold = JACOBI_REL_TOL * float(np.linalg.norm(a))

    for sweep in range(JACOBI_MAX_SWEEPS):
        off = _off_diagonal_norm(a)
        if off <= threshold:
            logger.debug("Jacobi converged after %d sweeps (n=%d)", sweep, n)
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                sign = 1.0 if tau >= 0 else -1.0
                tan = sign / (abs(tau) + math.sqrt(1.0 + tau * tau))
                cos = 1.0 / math.sqrt(1.0 + tan * tan)
                sin = tan * cos

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = cos * col_p - sin * col_q
                a[:, q] = sin * col_p + cos * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = cos * row_p - sin * row_q
                a[q, :] = sin * row_p + cos * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = cos * vec_p - sin * vec_q
                v[:, q] = sin * vec_p + cos * vec_q

    off = _off_diagonal_norm(a)
    if off <= threshold:
        return np.diag(a).copy(), v
    raise ConvergenceError(JACOBI_MAX_SWEEPS, off)


def sym_eig(m: npt.ArrayLike, method: EigenMethod = "lapack") -> EigenSystem:
    """Eigendecomposition of a real symmetric matrix.

    ``lapack`` delegates to ``numpy.linalg.eigh``; ``jacobi`` runs the cyclic
    Jacobi solver above. Both are deterministic for identical input bits.
    Eigenvalues come back in non-decreasing order.
    """
    matrix = symmetric_matrix(m)
    if method == "lapack":
        values, vectors = np.linalg.eigh(matrix)
    elif method == "jacobi":
        values, vectors = _jacobi(matrix)
    else:
        raise ArgumentError(f"unknown eigensolver {method!r}")

    order = np.argsort(values, kind="stable")
    return EigenSystem(values=values[order], vectors=vectors[:, order])


def sym_matrix_function(
    m: npt.ArrayLike,
    f: t.Callable[[float], float],
    method: EigenMethod = "lapack",
) -> FloatArray:
    """Return V·diag(f(values))·Vᵀ, symmetrized."""
    es = sym_eig(m, method)
    fvalues = np.vectorize(f, otypes=[np.float64])(es.values)
    result = (es.vectors * fvalues) @ es.vectors.T
    return (result + result.T) / 2


def unitary_evolution(
    m: npt.ArrayLike, t: float, method: EigenMethod = "lapack"
) -> ComplexArray:
    """Propagator e^{-i·m·t} built from the eigensystem of ``m``."""
    if not math.isfinite(t):
        raise ArgumentError(f"evolution time must be finite, got {t}")
    es = sym_eig(m, method)
    phases = np.exp(-1j * es.values * t)
    return (es.vectors * phases) @ es.vectors.T


def scale_of(values: npt.ArrayLike) -> float:
    """max(1, max|v|): tolerances and grouping widths are relative to this."""
    arr = np.asarray(values)
    if arr.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(arr))))


def ordered_by(
    primary: npt.ArrayLike,
    secondary: npt.ArrayLike,
    quantum: float = DEFAULT_QUANTUM,
) -> npt.NDArray[np.intp]:
    """Index order sorting by ``primary`` then ``secondary``.

    Neighbouring primary values within the quantum (chained) count as equal,
    so the secondary key decides among them.
    """
    p = np.asarray(primary, dtype=np.float64).ravel()
    s = np.asarray(secondary, dtype=np.float64).ravel()
    if p.shape != s.shape:
        raise ArgumentError("primary and secondary keys differ in length")
    if p.size == 0:
        return np.zeros(0, dtype=np.intp)

    width = quantum * scale_of(p)
    order = np.argsort(p, kind="stable")
    breaks = np.diff(p[order]) > width
    cluster = np.concatenate(([0], np.cumsum(breaks)))
    return order[np.lexsort((s[order], cluster))]


@dc.dataclass(frozen=True, eq=False)
class CanonicalMultiset:
    """Sorted values plus the quantum used to group near-equal neighbours."""

    values: FloatArray
    quantum: float

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def groups(self) -> list[tuple[float, int]]:
        """(representative, multiplicity) pairs; representative is the group mean."""
        if len(self) == 0:
            return []
        width = self.quantum * scale_of(self.values)
        starts = np.flatnonzero(np.diff(self.values) > width) + 1
        return [
            (float(chunk.mean()), int(chunk.size))
            for chunk in np.split(self.values, starts)
        ]

    @property
    def multiplicities(self) -> list[int]:
        return [count for _, count in self.groups]

    def summary(self) -> list[dict[str, float | int]]:
        return [{"value": value, "count": count} for value, count in self.groups]


def canonical_multiset(
    values: npt.ArrayLike, quantum: float = DEFAULT_QUANTUM
) -> CanonicalMultiset:
    if quantum <= 0:
        raise ArgumentError(f"quantum must be positive, got {quantum}")
    arr = np.sort(np.asarray(values, dtype=np.float64).ravel(), kind="stable")
    if not np.all(np.isfinite(arr)):
        raise ArgumentError("multiset values must be finite")
    arr.setflags(write=False)
    return CanonicalMultiset(values=arr, quantum=quantum)


def max_deviation(a: CanonicalMultiset, b: CanonicalMultiset) -> float:
    """Largest elementwise gap after sorting; inf when lengths differ."""
    if len(a) != len(b):
        return math.inf
    if len(a) == 0:
        return 0.0
    return float(np.max(np.abs(a.values - b.values)))


def multiset_equal(
    a: CanonicalMultiset, b: CanonicalMultiset, tol: float = DEFAULT_TOL
) -> bool:
    """Same length and elementwise within ``tol`` relative to the larger scale."""
    if a.quantum != b.quantum:
        raise ArgumentError(
            f"multisets were canonicalized with different quanta ({a.quantum} vs {b.quantum})"
        )
    if len(a) != len(b):
        return False
    width = tol * max(scale_of(a.values), scale_of(b.values))
    return max_deviation(a, b) <= width
