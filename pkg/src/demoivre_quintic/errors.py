"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class QuinticError(Exception):
    """Base class for all errors raised by :mod:`demoivre_quintic`."""


class NumericalOverflowError(QuinticError, ArithmeticError):
    """A computation produced a NaN or infinite component."""


class ConvergenceError(QuinticError):
    """An iterative method hit its iteration cap."""


class ResidualError(QuinticError):
    """A computed root set failed its residual gate."""


class SingularInputError(QuinticError, ValueError):
    """Input lies on (or within tolerance of) a singular locus.

    ``locus`` names the vanishing quantity, e.g. ``"alpha"`` or ``"c1"``.
    """

    def __init__(self, locus: str, message: str | None = None):
        self.locus = locus
        super().__init__(message or f"input lies on the singular locus {locus} = 0")


class BranchSelectionError(QuinticError):
    """No branch combination passed the reduction residual gate.

    Carries the full per-branch residual table and the stage diagnostics so
    callers (the CLI in particular) can show where the formulas broke down.
    """

    def __init__(self, message: str, table=None, diagnostics=None):
        super().__init__(message)
        self.table = table or []
        self.diagnostics = diagnostics or []


class BranchPointError(QuinticError):
    """A continuation path came too close to a branch point of z^5 - z + t."""

    def __init__(self, s: float, distance: float):
        self.s = s
        self.distance = distance
        super().__init__(
            f"continuation path passes within {distance:.3g} of a branch point (s = {s:.6g})"
        )
