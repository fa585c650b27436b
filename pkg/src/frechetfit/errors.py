"""Exception types shared across the package."""


class FrechetFitError(Exception):
    """Base class for all frechetfit-specific errors."""


class DomainError(FrechetFitError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class InfiniteMomentError(FrechetFitError, ValueError):
    """The requested moment does not exist for the given shape parameter."""


class DegenerateSampleError(FrechetFitError, ValueError):
    """All observations are equal; the estimator is undefined."""


class InfeasibleEstimateError(FrechetFitError, RuntimeError):
    """The sample admits no valid estimate for this method (e.g. no root in
    the feasible shape range)."""

    def __init__(self, method: str, message: str):
        self.method = method
        super().__init__(f"{method}: {message}")


class BracketExpansionError(FrechetFitError, RuntimeError):
    """Root bracketing failed to find a sign change after the allowed number
    of expansions."""


class UndefinedDiagnosticError(FrechetFitError, ValueError):
    """A convergence diagnostic is undefined (e.g. zero-variance chain)."""
