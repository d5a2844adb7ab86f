"""Overlap matrices as sets of complex numbers: ordering, R/I mismatch sums, comparison."""

from __future__ import annotations

import logging
import math
import typing as t

import numpy as np
import numpy.typing as npt

from ..errors import ArgumentError
from ..linalg import DEFAULT_QUANTUM, DEFAULT_TOL, ComplexArray, ordered_by, scale_of
from ..report import ComparisonReport, Method, Verdict

logger = logging.getLogger("isoscreen")

OverlapMatrix: t.TypeAlias = ComplexArray
"""O_ij = ⟨ψ_i(0)|ψ_j(T)⟩ over the vertex or pair basis."""


def _entries(o: npt.ArrayLike) -> ComplexArray:
    return np.asarray(o, dtype=np.complex128).ravel()


def fold_signs(o: npt.ArrayLike, quantum: float = DEFAULT_QUANTUM) -> ComplexArray:
    """Map each entry z to the one of ±z with positive real part.

    When the real part vanishes (within the quantum) the imaginary part decides.
    """
    values = _entries(o)
    width = quantum * scale_of(np.abs(values))
    flip = (values.real < -width) | ((np.abs(values.real) <= width) & (values.imag < 0))
    return np.where(flip, -values, values)


def _check_shapes(o1: npt.ArrayLike, o2: npt.ArrayLike) -> tuple[ComplexArray, ComplexArray]:
    a, b = np.asarray(o1), np.asarray(o2)
    if a.shape != b.shape:
        raise ArgumentError(f"overlap matrices differ in shape: {a.shape} vs {b.shape}")
    return _entries(a), _entries(b)


def r_metric(o1: npt.ArrayLike, o2: npt.ArrayLike, quantum: float = DEFAULT_QUANTUM) -> float:
    """Σ |Re õ − Re õ′| with both entry sets ordered by real part, then imaginary part."""
    a, b = _check_shapes(o1, o2)
    sa = a[ordered_by(a.real, a.imag, quantum)]
    sb = b[ordered_by(b.real, b.imag, quantum)]
    return float(np.sum(np.abs(sa.real - sb.real)))


def i_metric(o1: npt.ArrayLike, o2: npt.ArrayLike, quantum: float = DEFAULT_QUANTUM) -> float:
    """Σ |Im ô − Im ô′| with both entry sets ordered by imaginary part, then real part."""
    a, b = _check_shapes(o1, o2)
    sa = a[ordered_by(a.imag, a.real, quantum)]
    sb = b[ordered_by(b.imag, b.real, quantum)]
    return float(np.sum(np.abs(sa.imag - sb.imag)))


def canonical_entries(o: npt.ArrayLike, quantum: float = DEFAULT_QUANTUM) -> ComplexArray:
    values = _entries(o)
    return values[ordered_by(values.real, values.imag, quantum)]


def overlap_compare(
    o1: npt.ArrayLike,
    o2: npt.ArrayLike,
    tol: float = DEFAULT_TOL,
    quantum: float = DEFAULT_QUANTUM,
    parameters: dict[str, t.Any] | None = None,
) -> ComparisonReport:
    """Compare two overlap matrices as multisets of complex numbers."""
    parameters = {"tol": tol, "quantum": quantum, **(parameters or {})}
    if np.shape(o1) != np.shape(o2):
        return ComparisonReport(
            Verdict.DISTINGUISHED, Method.WALK1, parameters, math.inf, math.inf
        )

    a, b = canonical_entries(o1, quantum), canonical_entries(o2, quantum)
    deviation = float(np.max(np.abs(a - b))) if a.size else 0.0
    width = tol * max(scale_of(np.abs(a)), scale_of(np.abs(b)))
    verdict = Verdict.NOT_DISTINGUISHED if deviation <= width else Verdict.DISTINGUISHED
    logger.debug("Overlap comparison: max deviation %.3e, verdict %s", deviation, verdict)
    return ComparisonReport(
        verdict=verdict,
        method=Method.WALK1,
        parameters=parameters,
        r_metric=r_metric(o1, o2, quantum),
        i_metric=i_metric(o1, o2, quantum),
    )
