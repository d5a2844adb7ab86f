"""Relaxational particle dynamics on a graph and the distance-multiset invariant.

Particle ``a`` starts at the unit vector e_a. Pairwise forces along edges (and,
for some potentials, along non-edges) move the particles; the sorted multiset
of final squared distances is compared between two graphs.
"""

from __future__ import annotations

import dataclasses as dc
import enum
import logging
import math
import typing as t

import numpy as np

from .errors import ArgumentError, DivergenceError
from .graph import Graph
from .linalg import (
    DEFAULT_QUANTUM,
    DEFAULT_TOL,
    CanonicalMultiset,
    EigenMethod,
    FloatArray,
    canonical_multiset,
    max_deviation,
    multiset_equal,
    scale_of,
    sym_matrix_function,
)
from .report import ComparisonReport, Method, Verdict

logger = logging.getLogger("isoscreen")

DEFAULT_T = 1.0
DEFAULT_STEP = 0.1
DEFAULT_MOBILITY = 1.0
DIVERGENCE_LIMIT = 1e150


class PotentialKind(enum.StrEnum):
    HARMONIC = "harmonic"
    QUARTIC = "quartic"
    SATURATING = "saturating"


@dc.dataclass(frozen=True)
class PotentialSpec:
    kind: PotentialKind
    coeff_a: float = 1.0
    coeff_b: float = 1.0

    def __post_init__(self) -> None:
        if self.kind is PotentialKind.QUARTIC:
            if not (math.isfinite(self.coeff_a) and math.isfinite(self.coeff_b)):
                raise ArgumentError("quartic coefficients must be finite")
            if self.coeff_b < 0:
                raise ArgumentError(f"quartic coefficient B must be >= 0, got {self.coeff_b}")

    @classmethod
    def harmonic(cls) -> PotentialSpec:
        return cls(PotentialKind.HARMONIC)

    @classmethod
    def quartic(cls, a: float = 1.0, b: float = 1.0) -> PotentialSpec:
        return cls(PotentialKind.QUARTIC, a, b)

    @classmethod
    def saturating(cls) -> PotentialSpec:
        return cls(PotentialKind.SATURATING)

    @classmethod
    def parse(cls, text: str) -> PotentialSpec:
        """Parse ``harmonic``, ``saturating``, ``quartic`` or ``quartic:A,B``."""
        name, _, args = text.strip().partition(":")
        try:
            kind = PotentialKind(name.lower())
        except ValueError:
            raise ArgumentError(f"unknown potential {name!r}") from None
        if kind is not PotentialKind.QUARTIC:
            if args:
                raise ArgumentError(f"potential {kind} takes no coefficients")
            return cls(kind)
        if not args:
            return cls.quartic()
        try:
            a, b = (float(v) for v in args.split(","))
        except ValueError:
            raise ArgumentError(f"expected quartic:A,B, got {text!r}") from None
        return cls.quartic(a, b)

    def __str__(self) -> str:
        if self.kind is PotentialKind.QUARTIC:
            return f"quartic:{self.coeff_a:g},{self.coeff_b:g}"
        return str(self.kind)

    def coupling(self, adjacency: FloatArray, x: FloatArray) -> FloatArray:
        """Pair coefficients C at positions X, with force F_a = Σ_b C_ab (r_a − r_b)."""
        if self.kind is PotentialKind.HARMONIC:
            return adjacency
        d2 = _pair_distances(x)
        if self.kind is PotentialKind.QUARTIC:
            # -dU/dr_a for U = -A Σ d² + B Σ d⁴ over edges.
            return adjacency * (2.0 * self.coeff_a - 4.0 * self.coeff_b * d2)
        non_adjacency = 1.0 - adjacency - np.eye(adjacency.shape[0])
        return (adjacency - non_adjacency) / (1.0 + d2**1.5)


class Normalization(enum.StrEnum):
    NONE = "none"
    FROBENIUS = "frobenius"
    ROW = "row"


@dc.dataclass(frozen=True)
class IntegratorConfig:
    total_time: float = DEFAULT_T
    step: float = DEFAULT_STEP
    mobility: float = DEFAULT_MOBILITY
    normalization: Normalization = Normalization.NONE
    renormalize_each_step: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "normalization", Normalization(self.normalization))
        if not self.total_time > 0:
            raise ArgumentError(f"total time must be positive, got {self.total_time}")
        if not 0 < self.step <= self.total_time:
            raise ArgumentError(
                f"step must lie in (0, total_time], got {self.step} for T={self.total_time}"
            )
        if not self.mobility > 0:
            raise ArgumentError(f"mobility must be positive, got {self.mobility}")
        if abs(self.n_steps * self.step - self.total_time) > 1e-12 * max(1.0, self.total_time):
            raise ArgumentError(
                f"step {self.step} does not divide total time {self.total_time}"
            )

    @property
    def n_steps(self) -> int:
        return round(self.total_time / self.step)


def laplacian(g: Graph) -> FloatArray:
    adjacency = g.adjacency.astype(np.float64)
    return np.diag(adjacency.sum(axis=1)) - adjacency


def normalize(x: FloatArray, mode: Normalization) -> FloatArray:
    if mode is Normalization.FROBENIUS:
        norm = np.linalg.norm(x)
        return x / norm if norm > 0 else x
    if mode is Normalization.ROW:
        norms = np.linalg.norm(x, axis=1, keepdims=True)
        return np.divide(x, norms, out=x.copy(), where=norms > 0)
    return x


def normalize_gram(s: FloatArray, mode: Normalization) -> FloatArray:
    """The Gram matrix of ``normalize(X, mode)`` computed from S = X·Xᵀ alone."""
    if mode is Normalization.FROBENIUS:
        trace = float(np.trace(s))
        return s / trace if trace > 0 else s
    if mode is Normalization.ROW:
        diag = np.sqrt(np.clip(np.diag(s), 0.0, None))
        scale = np.outer(diag, diag)
        return np.divide(s, scale, out=s.copy(), where=scale > 0)
    return s


def evolve_harmonic_closed_form(
    g: Graph, T: float, method: EigenMethod = "lapack"
) -> FloatArray:
    """S = e^{2LT}, the Gram matrix of X(T) = e^{LT}."""
    if not math.isfinite(T):
        raise ArgumentError(f"T must be finite, got {T}")
    with np.errstate(over="ignore", invalid="ignore"):
        s = sym_matrix_function(laplacian(g), lambda v: np.exp(2.0 * v * T), method)
    if not np.all(np.isfinite(s)):
        raise ArgumentError(f"closed-form Gram matrix overflows at T={T}; use a smaller T")
    return s


def distance_matrix(s: FloatArray) -> FloatArray:
    """d²_ab = S_aa + S_bb − 2 S_ab."""
    diag = np.diag(s)
    return np.add.outer(diag, diag) - 2.0 * s


def _pair_distances(x: FloatArray) -> FloatArray:
    return np.clip(distance_matrix(x @ x.T), 0.0, None)


def euler_steps(
    g: Graph, pot: PotentialSpec, cfg: IntegratorConfig
) -> t.Iterator[tuple[int, FloatArray]]:
    """Yield (step index, X) after each first-order Euler step from X(0) = I."""
    adjacency = g.adjacency.astype(np.float64)
    x = np.eye(g.n)
    rate = cfg.step / cfg.mobility
    for step in range(1, cfg.n_steps + 1):
        c = pot.coupling(adjacency, x)
        force = c.sum(axis=1)[:, None] * x - c @ x
        x = x + rate * force
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > DIVERGENCE_LIMIT:
            hint = "" if cfg.renormalize_each_step else "try --normalize row --renormalize-each-step"
            raise DivergenceError(step, f"{pot} integration diverged", hint)
        if cfg.renormalize_each_step:
            x = normalize(x, cfg.normalization)
        yield step, x


def euler_integrate(g: Graph, pot: PotentialSpec, cfg: IntegratorConfig) -> FloatArray:
    x = np.eye(g.n)
    for _, x in euler_steps(g, pot, cfg):
        pass
    logger.debug("Integrated %s for %d steps on n=%d", pot, cfg.n_steps, g.n)
    return normalize(x, cfg.normalization)


def gram(x: FloatArray) -> FloatArray:
    s = x @ x.T
    return (s + s.T) / 2


def squared_distances(s: FloatArray, quantum: float = DEFAULT_QUANTUM) -> CanonicalMultiset:
    """All n² squared distances, diagonal zeros included."""
    return canonical_multiset(distance_matrix(s), quantum)


def classical_compare(
    g1: Graph,
    g2: Graph,
    pot: PotentialSpec,
    cfg: IntegratorConfig,
    tol: float = DEFAULT_TOL,
    quantum: float = DEFAULT_QUANTUM,
    *,
    every_step: bool = False,
    closed_form: bool = False,
    method: EigenMethod = "lapack",
) -> ComparisonReport:
    parameters: dict[str, t.Any] = {
        "potential": str(pot),
        "T": cfg.total_time,
        "dt": cfg.step,
        "mobility": cfg.mobility,
        "normalize": str(cfg.normalization),
        "renormalize_each_step": cfg.renormalize_each_step,
        "closed_form": closed_form,
        "every_step": every_step,
        "tol": tol,
        "quantum": quantum,
    }
    if g1.n != g2.n:
        return ComparisonReport(
            Verdict.DISTINGUISHED, Method.CLASSICAL, parameters, math.inf, 0.0
        )
    if closed_form and pot.kind is not PotentialKind.HARMONIC:
        raise ArgumentError("the closed form exists only for the harmonic potential")
    if closed_form and every_step:
        raise ArgumentError("per-step comparison needs the Euler integrator")

    first_step: int | None = None
    if closed_form:
        d1, d2 = (
            squared_distances(
                normalize_gram(evolve_harmonic_closed_form(g, cfg.total_time, method), cfg.normalization),
                quantum,
            )
            for g in (g1, g2)
        )
    elif every_step:
        d1 = d2 = canonical_multiset([], quantum)
        for (step, x1), (_, x2) in zip(euler_steps(g1, pot, cfg), euler_steps(g2, pot, cfg)):
            d1 = squared_distances(gram(normalize(x1, cfg.normalization)), quantum)
            d2 = squared_distances(gram(normalize(x2, cfg.normalization)), quantum)
            if first_step is None and not multiset_equal(d1, d2, tol):
                first_step = step
                logger.debug("Graphs first differ after step %d", step)
    else:
        d1, d2 = (squared_distances(gram(euler_integrate(g, pot, cfg)), quantum) for g in (g1, g2))

    equal = multiset_equal(d1, d2, tol) and first_step is None
    deviation = max_deviation(d1, d2) / max(scale_of(d1.values), scale_of(d2.values))
    return ComparisonReport(
        verdict=Verdict.NOT_DISTINGUISHED if equal else Verdict.DISTINGUISHED,
        method=Method.CLASSICAL,
        parameters=parameters,
        r_metric=deviation,
        multisets=(d1, d2),
        first_distinguishing_step=first_step,
    )
