from __future__ import annotations

import enum

__all__ = [
    "ArgumentError",
    "ConvergenceError",
    "CorpusError",
    "DivergenceError",
    "Error",
    "ErrorCodes",
    "FormatError",
]


class ErrorCodes(enum.IntEnum):
    """Stable codes carried by every isoscreen error."""

    FormatError = 1
    ArgumentError = 2
    DivergenceError = 3
    CorpusError = 4
    ConvergenceError = 5


class Error(Exception):
    def __init__(self, code: ErrorCodes, message: str) -> None:
        super().__init__(message)
        self.code = code

    @property
    def message(self) -> str:
        return super().__str__()

    def __str__(self) -> str:
        return f"{super().__str__()} ({self.code.name})"


class FormatError(Error):
    """Malformed graph6 / edge-list / manifest input.

    ``offset`` is a 0-based byte offset for graph6 text; ``line`` is a 1-based
    line number for line-oriented formats. At most one of them is set.
    """

    def __init__(
        self, message: str, *, offset: int | None = None, line: int | None = None
    ) -> None:
        if offset is not None:
            message = f"{message} at byte offset {offset}"
        elif line is not None:
            message = f"{message} at line {line}"
        super().__init__(ErrorCodes.FormatError, message)
        self.offset = offset
        self.line = line


class ArgumentError(Error, ValueError):
    def __init__(self, message: str) -> None:
        super().__init__(ErrorCodes.ArgumentError, message)


class DivergenceError(Error):
    def __init__(self, step: int, message: str = "integration diverged", hint: str = "") -> None:
        text = f"{message} at step {step}"
        super().__init__(ErrorCodes.DivergenceError, f"{text}; {hint}" if hint else text)
        self.step = step


class CorpusError(Error):
    def __init__(self, entry: str, message: str) -> None:
        super().__init__(ErrorCodes.CorpusError, f"corpus entry {entry!r}: {message}")
        self.entry = entry


class ConvergenceError(Error):
    def __init__(self, sweeps: int, off_norm: float) -> None:
        super().__init__(
            ErrorCodes.ConvergenceError,
            f"Jacobi eigensolver did not converge in {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})",
        )
        self.sweeps = sweeps
