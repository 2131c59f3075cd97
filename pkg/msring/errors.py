"""
Exception types raised by msring.

Every domain error is a ValueError so callers that only care about
"bad input" can keep catching ValueError. The CLI maps them to exit codes.
"""

from __future__ import annotations


class MsringError(ValueError):
    """Root of all msring errors."""

    exit_code = 1


class DimensionMismatchError(MsringError):
    exit_code = 2


class UnsupportedRankError(MsringError):
    exit_code = 2


class UnsupportedFieldError(MsringError):
    exit_code = 2


class DegenerateVectorError(MsringError):
    """A vector that must be nonzero was zero."""

    exit_code = 2


class SingularMatrixError(MsringError):
    pass


class PostnikovWuError(MsringError):
    """Raised when a form and w fail the Postnikov-Wu identity."""

    def __init__(self, pairs: list[tuple[int, int]]):
        self.pairs = list(pairs)
        shown = ", ".join(f"({i},{j})" for i, j in self.pairs)
        super().__init__(f"Postnikov-Wu identity violated at basis pairs {shown}")


class PlanValidationError(MsringError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("Invalid link plan:\n- " + "\n- ".join(self.violations))


class OrientabilityMismatchError(MsringError):
    pass
