"""Exception types shared across the package."""


class WernerChannelError(Exception):
    """Base class for all package errors."""


class ValidationError(WernerChannelError, ValueError):
    """Input failed a structural check (Hermiticity, trace, positivity, range)."""


class DimensionError(ValidationError):
    """Matrix dimension does not match what the operation needs."""


class SingularityError(WernerChannelError, ArithmeticError):
    """The normalization 3(1-p)^n + (1+3p)^n vanishes."""

    def __init__(self, p: float, n: int, singular_p: float | None = None):
        self.p = p
        self.n = n
        self.singular_p = singular_p
        where = f" (singular point p = {singular_p:.12g})" if singular_p is not None else ""
        super().__init__(f"normalization of rho^{n} vanishes at p = {p!r}{where}")


class OptimizerError(WernerChannelError, RuntimeError):
    """CHSH search exhausted its budget without converging."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
