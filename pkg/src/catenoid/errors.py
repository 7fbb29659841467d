"""Exception types raised by the library."""


class CatenoidError(Exception):
    """Base class for all library errors."""


class DomainError(CatenoidError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class UnsupportedCurvatureError(DomainError):
    """The requested operation is not defined for this sign of curvature."""


class DivergenceError(DomainError):
    """The requested integral is infinite."""


class ConvergenceError(CatenoidError, RuntimeError):
    """A numerical procedure failed to reach its tolerance."""
