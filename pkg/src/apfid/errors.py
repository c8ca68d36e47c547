"""Exception types shared across the package.

Every failure the library raises on purpose derives from ApfidError, so
callers (CLI, service) can separate expected analysis failures from bugs.
"""

from __future__ import annotations


class ApfidError(Exception):
    """Base class for all library errors.

    ``stage`` is filled in by the identification pipeline so a caller can
    tell which step rejected the data.
    """

    def __init__(self, message: str, *, stage: str | None = None):
        super().__init__(message)
        self.stage = stage

    def __str__(self) -> str:
        base = super().__str__()
        if self.stage:
            return f"[{self.stage}] {base}"
        return base


class InvalidArgumentError(ApfidError, ValueError):
    """A precondition on an argument was violated."""


class SingularPlantError(ApfidError):
    """The channel denominator vanishes at a requested frequency."""


class AmbiguousCouplingError(ApfidError):
    """A coupling tone collides with an independent input tone."""


class AliasingError(InvalidArgumentError):
    """A requested frequency is at or above the sampling Nyquist rate."""


class DegenerateInputError(ApfidError):
    """A signal with zero norm was passed where a direction is needed."""


class UnclassifiableAstatismError(ApfidError):
    """The low-frequency response point is in quadrant four or on an axis."""

    def __init__(self, message: str, w: complex, *, stage: str | None = None):
        super().__init__(message, stage=stage)
        self.w = w


class UnderdeterminedError(InvalidArgumentError):
    """Fewer equations than unknowns in a coefficient fit."""


class DegenerateFitError(ApfidError):
    """The fit matrix is rank deficient."""


class NoCommonFrequenciesError(ApfidError):
    """Input and output share no tones; nothing to identify."""


class NoConsistentModelError(ApfidError):
    """No candidate order met the fit tolerance.

    ``residuals`` maps each attempted order to its relative residual.
    """

    def __init__(self, message: str, residuals: dict[int, float], *, stage: str | None = None):
        super().__init__(message, stage=stage)
        self.residuals = dict(residuals)


class CsvFormatError(ApfidError):
    """Malformed telemetry CSV. ``line`` is 1-based, counting the header."""

    def __init__(self, message: str, line: int | None = None, *, stage: str | None = None):
        super().__init__(message, stage=stage)
        self.line = line


class ConfigError(ApfidError):
    """Malformed or inconsistent run configuration."""
