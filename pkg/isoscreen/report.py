from __future__ import annotations

import dataclasses as dc
import enum
import math
import typing as t

from .linalg import CanonicalMultiset


class Verdict(enum.StrEnum):
    DISTINGUISHED = "Distinguished"
    NOT_DISTINGUISHED = "NotDistinguished"


class Method(enum.StrEnum):
    CLASSICAL = "classical"
    WALK1 = "walk1"
    TWO_PARTICLE = "two-particle"


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


@dc.dataclass(frozen=True)
class ComparisonReport:
    """Outcome of comparing one invariant on two graphs.

    For the classical method ``r_metric`` is the largest sorted-distance gap
    relative to the data scale and ``i_metric`` is 0; for the walks they are
    the real-part and imaginary-part mismatch sums.
    """

    verdict: Verdict
    method: Method
    parameters: dict[str, t.Any]
    r_metric: float = 0.0
    i_metric: float = 0.0
    multisets: tuple[CanonicalMultiset, ...] = ()
    first_distinguishing_step: int | None = None

    @property
    def distinguished(self) -> bool:
        return self.verdict is Verdict.DISTINGUISHED

    def to_dict(self) -> dict[str, t.Any]:
        """JSON-ready form; non-finite metrics become null."""
        data: dict[str, t.Any] = {
            "method": str(self.method),
            "verdict": str(self.verdict),
            "r_metric": _finite_or_none(self.r_metric),
            "i_metric": _finite_or_none(self.i_metric),
            "parameters": dict(self.parameters),
        }
        if self.first_distinguishing_step is not None:
            data["first_distinguishing_step"] = self.first_distinguishing_step
        if self.multisets:
            data["multisets"] = [m.summary() for m in self.multisets]
        return data


class RunReport(t.TypedDict):
    """The single JSON object ``isoscreen compare`` prints."""

    method: str
    verdict: str
    r_metric: float | None
    i_metric: float | None
    parameters: dict[str, t.Any]
    """Every parameter that influenced the run, under its config-file key."""
    inputs: list[str]
    """Graph references as given on the command line."""
    multisets: t.NotRequired[list[list[dict[str, float | int]]]]
    """Group summaries (representative value and multiplicity) per graph."""
    first_distinguishing_step: t.NotRequired[int]
    timing_seconds: float
    version: str
