from .overlaps import (
    OverlapMatrix,
    canonical_entries,
    fold_signs,
    i_metric,
    overlap_compare,
    r_metric,
)
from .pairs import (
    DEFAULT_THRESHOLD,
    FermionSigns,
    KMatrix,
    PairBasis,
    Statistics,
    SweepPoint,
    build_k_matrix,
    k_spectrum,
    pair_basis,
    two_particle_compare,
    two_particle_overlaps,
    u_grid,
    u_sweep,
    u_sweep_concurrent,
)
from .single import single_overlaps, single_walk_compare, walk_hamiltonian

__all__ = [
    "DEFAULT_THRESHOLD",
    "FermionSigns",
    "KMatrix",
    "OverlapMatrix",
    "PairBasis",
    "Statistics",
    "SweepPoint",
    "build_k_matrix",
    "canonical_entries",
    "fold_signs",
    "i_metric",
    "k_spectrum",
    "overlap_compare",
    "pair_basis",
    "r_metric",
    "single_overlaps",
    "single_walk_compare",
    "two_particle_compare",
    "two_particle_overlaps",
    "u_grid",
    "u_sweep",
    "u_sweep_concurrent",
    "walk_hamiltonian",
]
