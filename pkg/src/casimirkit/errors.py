"""Exception hierarchy shared by every module."""


class CasimirError(Exception):
    """Base class for all errors raised by casimirkit."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain of the operation."""


class ValidationError(DomainError):
    """Input data (tables, bands, layer stacks, profiles) violates an invariant."""


class ConfigurationError(DomainError):
    """Mutually incompatible settings, e.g. a material and a zero-frequency prescription."""


class GeometryError(DomainError):
    """Geometry outside the validity range of an approximation."""


class UnsupportedOperationError(CasimirError, TypeError):
    """The operation is not defined for this kind of model."""


class ConvergenceError(CasimirError, ArithmeticError):
    """A numerical procedure did not reach its tolerance within budget.

    ``estimate`` holds the best value reached and ``error`` its error bound.
    """

    def __init__(self, message, estimate=float("nan"), error=float("inf")):
        super().__init__(f"{message} (estimate={estimate:.6e}, error={error:.3e})")
        self.estimate = estimate
        self.error = error


def summarize_problems(problems, limit: int = 10) -> str:
    """Join row-level complaints, truncating long lists."""
    shown = "; ".join(problems[:limit])
    extra = len(problems) - limit
    return shown + (f"; ... and {extra} more" if extra > 0 else "")
