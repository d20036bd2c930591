"""Exception hierarchy shared by all modules."""


class GeronimusError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GeronimusError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class BranchError(DomainError):
    """A point lies on the cut [0, inf) where a branch is not defined."""


class PoleError(GeronimusError, ZeroDivisionError):
    """A denominator vanished (Pochhammer pole, division hazard, ODE pole)."""


class DegenerateError(GeronimusError, ArithmeticError):
    """A representation or formula degenerates for the given parameters."""


class MeasureError(GeronimusError, ArithmeticError):
    """Computed recurrence data contradict positivity of the measure."""


class NonConvergenceError(GeronimusError, ArithmeticError):
    """An iterative procedure failed to reach its tolerance.

    Parameters
    ----------
    message : str
        Human readable description naming the failing operation.
    estimate : float, optional
        Best error estimate achieved before giving up.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
