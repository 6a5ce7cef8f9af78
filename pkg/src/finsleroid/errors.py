"""Exception types raised by the finsleroid package."""


class FinsleroidError(Exception):
    """Base class for all package errors."""


class DomainError(FinsleroidError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class ConeError(DomainError):
    """A relativistic argument lies on, or on the wrong side of, the light cone."""

    def __init__(self, message, sector=None):
        super().__init__(message)
        self.sector = sector


class ConvergenceError(FinsleroidError, RuntimeError):
    """An iterative solver gave up before meeting its tolerance."""

    def __init__(self, message, last=None, residual=None):
        super().__init__(message)
        self.last = last
        self.residual = residual


class NonFiniteEvaluation(FinsleroidError, FloatingPointError):
    """A probed function returned inf or nan."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
