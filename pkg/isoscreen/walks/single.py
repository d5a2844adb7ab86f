from __future__ import annotations

import numpy as np

from ..graph import Graph
from ..linalg import DEFAULT_QUANTUM, DEFAULT_TOL, EigenMethod, FloatArray, unitary_evolution
from ..report import ComparisonReport
from .overlaps import OverlapMatrix, overlap_compare

DEFAULT_WALK_T = 1.0


def walk_hamiltonian(g: Graph) -> FloatArray:
    """Tight-binding Hamiltonian H = −A."""
    return -g.adjacency.astype(np.float64)


def single_overlaps(
    g: Graph, T: float = DEFAULT_WALK_T, method: EigenMethod = "lapack"
) -> OverlapMatrix:
    """O_ij = ⟨i|e^{−iHT}|j⟩ for a single walker started on each vertex."""
    return unitary_evolution(walk_hamiltonian(g), T, method)


def single_walk_compare(
    g1: Graph,
    g2: Graph,
    T: float = DEFAULT_WALK_T,
    tol: float = DEFAULT_TOL,
    quantum: float = DEFAULT_QUANTUM,
    method: EigenMethod = "lapack",
) -> ComparisonReport:
    return overlap_compare(
        single_overlaps(g1, T, method),
        single_overlaps(g2, T, method),
        tol,
        quantum,
        {"T": T},
    )
