"""Exception types raised across the package."""

from __future__ import annotations


class MkpBoundError(Exception):
    """Base class for all package errors."""


class InvalidInstance(MkpBoundError, ValueError):
    """Instance data failed validation.

    ``violations`` holds every problem found, not only the first one, as
    ``(kind, field, index)`` tuples.
    """

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class EmptyInstance(InvalidInstance):
    pass


class NonPositiveValue(InvalidInstance):
    def __init__(self, field: str, index: int, violations=()):
        super().__init__(
            f"{field}[{index}] must be a positive integer",
            violations or [("non_positive", field, index)],
        )
        self.field = field
        self.index = index


class DivisibilityViolation(InvalidInstance):
    def __init__(self, size_a: int, size_b: int):
        super().__init__(f"sizes {size_a} and {size_b} do not form a divisibility chain")
        self.size_a = size_a
        self.size_b = size_b


class ResourceLimit(MkpBoundError):
    """A solver ran out of its node or memory budget.

    ``lower`` is the best feasible value found, ``upper`` a valid upper bound
    on the optimum. The result is not exact.
    """

    def __init__(self, message: str, lower, upper):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class InfeasibleCounts(MkpBoundError):
    pass


class DegenerateItem(MkpBoundError, ValueError):
    pass


class WitnessFailure(MkpBoundError):
    pass


class TooLarge(MkpBoundError):
    pass


class DegenerateDraw(MkpBoundError):
    pass
