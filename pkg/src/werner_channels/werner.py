"""Werner states and the normalized power channel rho -> rho^n / Tr[rho^n].

Every matrix in the family has the shape

    [[a, 0, 0, c],
     [0, b, 0, 0],
     [0, 0, b, 0],
     [c, 0, 0, a]]

so the channel is fully described by the coefficient triple (a, b, c).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularityError, ValidationError
from .smallmat import ComplexMatrix, Spectrum

P_MIN = -1.0 / 3.0
P_MAX = 1.0
# relative size below which the scaled normalization counts as zero
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class WernerParameters:
    """Mixing parameter ``p`` of the input Werner state and channel power ``n``."""

    p: float
    n: int = 1

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValidationError(f"channel power n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", float(self.p))
        if not math.isfinite(self.p):
            raise ValidationError(f"p must be finite, got {self.p!r}")

    @property
    def input_is_state(self) -> bool:
        """True when the input Werner matrix itself is a density matrix."""
        return P_MIN <= self.p <= P_MAX

    @property
    def formal(self) -> bool:
        """Input lies outside [-1/3, 1]; results are formal algebra, not physics."""
        return not self.input_is_state


@dataclass(frozen=True)
class WernerCoefficients:
    a: float
    b: float
    c: float

    def as_matrix(self) -> ComplexMatrix:
        a, b, c = self.a, self.b, self.c
        return ComplexMatrix(
            [
                [a, 0, 0, c],
                [0, b, 0, 0],
                [0, 0, b, 0],
                [c, 0, 0, a],
            ]
        )


def singular_point(n: int) -> float | None:
    """The real p where 3(1-p)^n + (1+3p)^n = 0, if any.

    Only odd n have one; for n = 1 it sits at infinity.
    """
    if n % 2 == 0:
        return None
    root = 3.0 ** (1.0 / n)
    if root == 3.0:
        return None
    return 1.0 + 4.0 / (root - 3.0)


def scaled_powers(params: WernerParameters) -> tuple[float, float, float]:
    """``((1-p)^n, (1+3p)^n, den)`` all divided by max(|1-p|, |1+3p|)^n.

    Ratios of these are exact ratios of the unscaled quantities, and nothing
    overflows for large n.
    """
    p, n = params.p, params.n
    lo, hi = 1.0 - p, 1.0 + 3.0 * p
    scale = max(abs(lo), abs(hi))
    x = (lo / scale) ** n
    y = (hi / scale) ** n
    den = 3.0 * x + y
    if abs(den) <= SINGULAR_TOL:
        raise SingularityError(p, n, singular_point(n))
    return x, y, den


def werner_coefficients(params: WernerParameters) -> WernerCoefficients:
    x, y, den = scaled_powers(params)
    return WernerCoefficients(a=(x + y) / (2.0 * den), b=x / den, c=(y - x) / (2.0 * den))


def werner_density(p: float) -> ComplexMatrix:
    """The input Werner matrix with a = (1+p)/4, b = (1-p)/4, c = p/2."""
    return WernerCoefficients((1.0 + p) / 4.0, (1.0 - p) / 4.0, p / 2.0).as_matrix()


def channel_density(params: WernerParameters) -> ComplexMatrix:
    return werner_coefficients(params).as_matrix()


def channel_spectrum(params: WernerParameters) -> Spectrum:
    x, y, den = scaled_powers(params)
    return Spectrum.sorted_from([y / den, x / den, x / den, x / den])


class Sign(enum.Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"

    @classmethod
    def of(cls, p: float) -> Sign:
        if p < 0:
            return cls.NEGATIVE
        if p > 0:
            return cls.POSITIVE
        return cls.ZERO


def limit_spectrum(p_sign: Sign | str) -> Spectrum:
    """Eigenvalues of the channel output as n -> infinity."""
    sign = Sign(p_sign)
    if sign is Sign.NEGATIVE:
        return Spectrum((1 / 3, 1 / 3, 1 / 3, 0.0))
    if sign is Sign.ZERO:
        return Spectrum((0.25, 0.25, 0.25, 0.25))
    return Spectrum((1.0, 0.0, 0.0, 0.0))


_R = 1.0 / math.sqrt(2.0)


def werner_eigenbasis() -> ComplexMatrix:
    """Columns are the eigenvectors for (1+3p)/4 and the triple (1-p)/4.

    The matrix is real, symmetric and its own inverse.
    """
    return ComplexMatrix(
        [
            [_R, 0, 0, _R],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [_R, 0, 0, -_R],
        ]
    )


def werner_eigenvalue_diagonal(p: float, n: int = 1) -> ComplexMatrix:
    """D^n, with D the eigenvalue diagonal ordered to match werner_eigenbasis."""
    hi, lo = (1.0 + 3.0 * p) / 4.0, (1.0 - p) / 4.0
    return ComplexMatrix.diag([hi**n, lo**n, lo**n, lo**n])


def apply_channel(rho: ComplexMatrix, n: int) -> ComplexMatrix:
    """Normalized n-th power of an arbitrary matrix, by repeated multiplication."""
    if n < 1:
        raise ValidationError(f"channel power n must be a positive integer, got {n!r}")
    out = rho
    for _ in range(n - 1):
        out = out @ rho
    tr = out.trace()
    if abs(tr) <= SINGULAR_TOL:
        raise ValidationError("trace of rho^n vanishes; channel output undefined")
    return out / tr
