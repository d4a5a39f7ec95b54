"""Exception hierarchy shared by every package module."""


class GlvGameError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 2


class ShapeError(GlvGameError, ValueError):
    """Array dimensions do not conform."""


class ParameterError(GlvGameError, ValueError):
    """An argument lies outside its admissible range or fails validation."""


class DomainError(GlvGameError, ValueError):
    """A state lies outside the domain of the map being evaluated."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class RangeError(GlvGameError, OverflowError):
    """A monomial evaluation overflowed double precision."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SingularMatrixError(GlvGameError, ArithmeticError):
    def __init__(self, name, condition_number):
        super().__init__(
            f"{name} is numerically singular (condition number {condition_number:.3e})"
        )
        self.name = name
        self.condition_number = condition_number


class CompletionError(GlvGameError):
    """No standard-basis completion makes the exponent matrix nonsingular."""


class IntegrationError(GlvGameError):
    pass


class MaxStepsExceeded(IntegrationError):
    pass


class NonFiniteRHSError(IntegrationError):
    def __init__(self, t, state):
        super().__init__(f"non-finite right-hand side at t={t!r}, state={list(state)!r}")
        self.t = t
        self.state = state


class BoundaryCollisionError(IntegrationError):
    """A GLV/LV state component approached the boundary of the open orthant."""


class SimplexUnderflowError(IntegrationError):
    """A replicator state component underflowed."""


class UsageError(GlvGameError):
    exit_code = 64
