"""Two interacting walkers: pair bases, K matrices, overlaps and the Hubbard-U sweep."""

from __future__ import annotations

import asyncio
import dataclasses as dc
import enum
import itertools
import logging
import math
import typing as t

import numpy as np

from ..errors import ArgumentError
from ..graph import Graph
from ..linalg import DEFAULT_QUANTUM, EigenMethod, FloatArray, sym_eig, unitary_evolution
from ..report import ComparisonReport, Method, Verdict
from .overlaps import OverlapMatrix, fold_signs, i_metric, r_metric

logger = logging.getLogger("isoscreen")

DEFAULT_THRESHOLD = 1e-6
DEFAULT_PAIR_T = 1.0
DEFAULT_JOBS = 4


class Statistics(enum.StrEnum):
    BOSON = "boson"
    HARD_CORE_BOSON = "hcb"
    FERMION = "fermion"


class FermionSigns(enum.StrEnum):
    """How fermion overlap entries enter the comparison.

    The basis state |ij⟩ (i < j) carries an orientation, so relabeling vertices
    can flip the sign of individual overlap entries. ``canonical`` compares
    entries up to sign; ``oriented`` compares them as computed in the
    lexicographic basis of each graph's own labeling.
    """

    CANONICAL = "canonical"
    ORIENTED = "oriented"


@dc.dataclass(frozen=True)
class PairBasis:
    statistics: Statistics
    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    def index(self, i: int, j: int) -> int:
        return self.pairs.index((i, j))


def pair_basis(n: int, stats: Statistics) -> PairBasis:
    """Lexicographic |ij⟩ states: i ≤ j for bosons, i < j otherwise (0-based)."""
    if n < 2:
        raise ArgumentError(f"a pair basis needs n >= 2, got {n}")
    stats = Statistics(stats)
    if stats is Statistics.BOSON:
        pairs = itertools.combinations_with_replacement(range(n), 2)
    else:
        pairs = itertools.combinations(range(n), 2)
    return PairBasis(stats, n, tuple(pairs))


@dc.dataclass(frozen=True, eq=False)
class KMatrix:
    basis: PairBasis
    hubbard_u: float
    entries: FloatArray

    @property
    def statistics(self) -> Statistics:
        return self.basis.statistics


def build_k_matrix(g: Graph, stats: Statistics, u: float = 0.0) -> KMatrix:
    """K_{ij,kl} = −⟨ij|H|kl⟩ for two particles hopping on ``g``.

    With t = δ_il A_kj + δ_jk A_il + δ_ik A_jl + δ_jl A_ik:
    hard-core bosons use t; fermions flip the sign of the last two terms;
    soft-core bosons use t between singly occupied states, t/√2 between a
    singly and a doubly occupied state, and U·δ_ik between doubly occupied ones.
    """
    stats = Statistics(stats)
    if not math.isfinite(u) or u < 0:
        raise ArgumentError(f"Hubbard U must be finite and >= 0, got {u}")
    basis = pair_basis(g.n, stats)
    a = g.adjacency.astype(np.float64)
    idx = np.array(basis.pairs)
    i, j = idx[:, 0][:, None], idx[:, 1][:, None]
    k, l = idx[:, 0][None, :], idx[:, 1][None, :]  # noqa: E741

    direct = (i == l) * a[k, j] + (j == k) * a[i, l]
    exchange = (i == k) * a[j, l] + (j == l) * a[i, k]

    if stats is Statistics.FERMION:
        entries = direct - exchange
    elif stats is Statistics.HARD_CORE_BOSON:
        entries = direct + exchange
    else:
        hop = direct + exchange
        doubly_row, doubly_col = i == j, k == l
        entries = np.where(
            doubly_row & doubly_col,
            u * (i == k),
            np.where(doubly_row ^ doubly_col, hop / math.sqrt(2.0), hop),
        )

    entries = np.asarray(entries, dtype=np.float64)
    entries.setflags(write=False)
    return KMatrix(basis, u if stats is Statistics.BOSON else 0.0, entries)


def k_spectrum(k: KMatrix, method: EigenMethod = "lapack") -> FloatArray:
    return sym_eig(k.entries, method).values


def two_particle_overlaps(
    k: KMatrix, T: float = DEFAULT_PAIR_T, method: EigenMethod = "lapack"
) -> OverlapMatrix:
    """Evolve every pair state under H = −K, i.e. O = e^{+iKT}."""
    return unitary_evolution(-k.entries, T, method)


def two_particle_compare(
    g1: Graph,
    g2: Graph,
    stats: Statistics,
    u: float = 0.0,
    T: float = DEFAULT_PAIR_T,
    threshold: float = DEFAULT_THRESHOLD,
    quantum: float = DEFAULT_QUANTUM,
    *,
    fermion_signs: FermionSigns = FermionSigns.CANONICAL,
    method: EigenMethod = "lapack",
) -> ComparisonReport:
    """Distinguished iff max(R, I) exceeds ``threshold``."""
    stats = Statistics(stats)
    parameters: dict[str, t.Any] = {
        "stats": str(stats),
        "U": u,
        "T": T,
        "threshold": threshold,
        "quantum": quantum,
    }
    if stats is Statistics.FERMION:
        parameters["fermion_signs"] = str(FermionSigns(fermion_signs))
    if g1.n != g2.n:
        return ComparisonReport(
            Verdict.DISTINGUISHED, Method.TWO_PARTICLE, parameters, math.inf, math.inf
        )

    o1, o2 = (
        two_particle_overlaps(build_k_matrix(g, stats, u), T, method) for g in (g1, g2)
    )
    if stats is Statistics.FERMION and fermion_signs == FermionSigns.CANONICAL:
        o1, o2 = fold_signs(o1, quantum), fold_signs(o2, quantum)

    r, i = r_metric(o1, o2, quantum), i_metric(o1, o2, quantum)
    verdict = Verdict.DISTINGUISHED if max(r, i) > threshold else Verdict.NOT_DISTINGUISHED
    logger.debug("Two-particle %s U=%g T=%g: R=%.6g I=%.6g", stats, u, T, r, i)
    return ComparisonReport(verdict, Method.TWO_PARTICLE, parameters, r, i)


@dc.dataclass(frozen=True)
class SweepPoint:
    u: float
    r: float
    i: float


def _check_u_values(u_values: t.Sequence[float]) -> list[float]:
    values = [float(u) for u in u_values]
    for u in values:
        if not math.isfinite(u) or u < 0:
            raise ArgumentError(f"U values must be finite and >= 0, got {u}")
    return values


def _sweep_point(g1: Graph, g2: Graph, u: float, T: float, method: EigenMethod) -> SweepPoint:
    report = two_particle_compare(g1, g2, Statistics.BOSON, u, T, method=method)
    logger.debug("Sweep point U=%g done", u)
    return SweepPoint(u, report.r_metric, report.i_metric)


def u_sweep(
    g1: Graph,
    g2: Graph,
    u_values: t.Sequence[float],
    T: float = DEFAULT_PAIR_T,
    method: EigenMethod = "lapack",
) -> list[SweepPoint]:
    """Soft-core boson R and I at each U, in input order."""
    return [_sweep_point(g1, g2, u, T, method) for u in _check_u_values(u_values)]


async def u_sweep_concurrent(
    g1: Graph,
    g2: Graph,
    u_values: t.Sequence[float],
    T: float = DEFAULT_PAIR_T,
    jobs: int = DEFAULT_JOBS,
    method: EigenMethod = "lapack",
) -> list[SweepPoint]:
    """``u_sweep`` with up to ``jobs`` points evaluated in worker threads."""
    if jobs < 1:
        raise ArgumentError(f"jobs must be >= 1, got {jobs}")
    values = _check_u_values(u_values)
    semaphore = asyncio.Semaphore(jobs)

    async def run(u: float) -> SweepPoint:
        async with semaphore:
            return await asyncio.to_thread(_sweep_point, g1, g2, u, T, method)

    return list(await asyncio.gather(*(run(u) for u in values)))


def u_grid(start: float, stop: float, steps: int) -> list[float]:
    """``steps`` evenly spaced values from ``start`` to ``stop`` inclusive."""
    if steps < 1:
        raise ArgumentError(f"steps must be >= 1, got {steps}")
    if steps == 1:
        return [float(start)]
    return [float(v) for v in np.linspace(start, stop, steps)]
