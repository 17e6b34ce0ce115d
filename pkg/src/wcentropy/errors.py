"""Exception hierarchy shared across the package."""


class WcentropyError(Exception):
    """Base class for all package errors."""


class DomainError(WcentropyError, ValueError):
    """Inputs violate a documented precondition (bad parameter, bad support)."""


class SupportError(DomainError):
    """A divergence ratio is undefined: the reference survival function
    vanishes where the numerator is still positive."""

    def __init__(self, message: str, abscissa: float):
        super().__init__(message)
        self.abscissa = abscissa


class DivergenceError(WcentropyError):
    """An entropy integral was detected to be infinite."""


class ConvergenceError(WcentropyError):
    """Adaptive integration did not reach tolerance; carries the best estimate."""

    def __init__(self, message: str, best_estimate: float, error_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class IntegrandError(WcentropyError):
    """The integrand produced a non-finite value at a known abscissa."""

    def __init__(self, message: str, abscissa: float):
        super().__init__(message)
        self.abscissa = abscissa
