# isoscreen run configuration schema
#
# Keys match the long CLI flags (dashes become underscores) and the
# "parameters" object of every JSON report, so a report's parameters saved as
# TOML reproduce the run.

from __future__ import annotations

from typing import Literal, NotRequired, TypedDict

MethodName = Literal["classical", "walk1", "two-particle"]

StatisticsName = Literal["fermion", "boson", "hcb"]

NormalizationName = Literal["none", "frobenius", "row"]

FermionSignsName = Literal["canonical", "oriented"]

EigensolverName = Literal["lapack", "jacobi"]


class Model(TypedDict, total=False):
    """
    Parameters of one isoscreen run.

    Every field is optional; missing fields fall back to the library defaults.
    """

    method: NotRequired[MethodName]
    """Invariant family to compare with. Default: classical."""

    potential: NotRequired[str]
    """Classical pair potential: 'harmonic', 'saturating' or 'quartic:A,B'. Default: harmonic."""

    stats: NotRequired[StatisticsName]
    """Two-particle statistics. Default: fermion."""

    U: NotRequired[float]
    """Hubbard on-site term for soft-core bosons (>= 0). Default: 0."""

    T: NotRequired[float]
    """Total evolution time. Default: 1."""

    dt: NotRequired[float]
    """Euler step length for the classical dynamics; must divide T. Default: 0.1."""

    mobility: NotRequired[float]
    """Mobility in mobility·dr/dt = F. Default: 1."""

    normalize: NotRequired[NormalizationName]
    """Normalization of the final positions. Default: none."""

    renormalize_each_step: NotRequired[bool]
    """Apply the normalization after every Euler step. Default: false."""

    every_step: NotRequired[bool]
    """Compare the two graphs after every Euler step. Default: false."""

    closed_form: NotRequired[bool]
    """Use S = exp(2LT) instead of Euler integration (harmonic only). Default: false."""

    fermion_signs: NotRequired[FermionSignsName]
    """Compare fermion overlaps up to sign ('canonical') or as computed ('oriented'). Default: canonical."""

    tol: NotRequired[float]
    """Relative tolerance for multiset equality. Default: 1e-8."""

    quantum: NotRequired[float]
    """Relative grouping width for sorting and multiplicities. Default: 1e-9."""

    threshold: NotRequired[float]
    """Two-particle verdict threshold on max(R, I). Default: 1e-6."""

    eigensolver: NotRequired[EigensolverName]
    """Dense symmetric eigensolver. Default: lapack."""

    data_dir: NotRequired[str]
    """Directory holding the external corpus manifest and graph6 files."""

    jobs: NotRequired[int]
    """Concurrent sweep points for sweep-u. Default: 1 (sequential)."""

    u_from: NotRequired[float]
    """First U of a sweep grid. Default: 0."""

    u_to: NotRequired[float]
    """Last U of a sweep grid. Default: 2."""

    u_steps: NotRequired[int]
    """Number of sweep grid points. Default: 41."""
