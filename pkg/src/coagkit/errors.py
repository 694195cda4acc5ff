"""Exception hierarchy shared by the solver modules."""


class CoagError(Exception):
    """Base class for all coagkit errors."""


class InvalidDomainError(CoagError, ValueError):
    """Grid bounds that are non-finite, negative or out of order."""


class TooFewElementsError(CoagError, ValueError):
    """A grid needs at least three boundaries (two elements)."""


class IncompatibleGridError(CoagError, ValueError):
    """Two grids that do not nest into one another."""


class DomainError(CoagError, ValueError):
    """An argument outside the domain of a function."""


class IntegrandError(CoagError, ArithmeticError):
    """An integrand or right-hand side produced a non-finite value."""


class ConvergenceError(CoagError, ArithmeticError):
    """Adaptive quadrature ran out of subdivisions.

    The best available estimate and its error bound are kept on the
    exception so callers can decide whether to accept them.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class IntegrationError(CoagError, ArithmeticError):
    """Time integration failed (step size underflow or solver failure)."""

    def __init__(self, message, t=None, y=None):
        super().__init__(message)
        self.t = t
        self.y = y


class ConfigError(CoagError, ValueError):
    """Malformed or inconsistent experiment configuration."""
