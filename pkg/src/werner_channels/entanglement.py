"""Peres-Horodecki classification of the channel outputs.

For two qubits a positive partial transpose is necessary and sufficient for
separability, so the sign of the smallest PPT eigenvalue decides everything.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .smallmat import Spectrum
from .werner import WernerParameters, scaled_powers, channel_spectrum

NEGATIVE_TOL = 1e-12


class Classification(str, enum.Enum):
    SEPARABLE = "separable"
    ENTANGLED = "entangled"


@dataclass(frozen=True)
class EntanglementVerdict:
    state_valid: bool
    classification: Classification
    boundary_low: float | None
    boundary_high: float

    @property
    def formal(self) -> bool:
        return not self.state_valid

    @property
    def entangled(self) -> bool:
        return self.classification is Classification.ENTANGLED


def ppt_spectrum_closed(params: WernerParameters) -> Spectrum:
    """Eigenvalues of the partially transposed channel output, from the closed forms."""
    x, y, den = scaled_powers(params)
    first = (3.0 * x - y) / (2.0 * den)
    rest = (x + y) / (2.0 * den)
    return Spectrum.sorted_from([first, rest, rest, rest])


def negativity(params: WernerParameters) -> float:
    """Sum of absolute PPT eigenvalues: 1 when separable, up to 2 at p = 1."""
    return sum(abs(v) for v in ppt_spectrum_closed(params))


def negativity_closed(params: WernerParameters) -> float:
    """|2(1+3p)^n / (3(1-p)^n + (1+3p)^n)|, valid on the entangled branch only."""
    _, y, den = scaled_powers(params)
    return abs(2.0 * y / den)


def entanglement_boundaries(n: int) -> tuple[float | None, float]:
    """``(lower, upper)`` ends of the entangled domain for power ``n``.

    Entangled for p > upper; for even n also for p < lower. Odd n have no
    lower branch inside the physical range.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    root = 3.0 ** (1.0 / n)
    upper = 1.0 - 4.0 / (root + 3.0)
    if n % 2:
        # exact value for n = 1 instead of 1 - 4/(3 + 3) rounding
        return None, (1.0 / 3.0 if n == 1 else upper)
    return 1.0 + 4.0 / (root - 3.0), upper


def classify_werner(params: WernerParameters) -> EntanglementVerdict:
    spectrum = channel_spectrum(params)
    ppt = ppt_spectrum_closed(params)
    low, high = entanglement_boundaries(params.n)
    return EntanglementVerdict(
        state_valid=spectrum.minimum >= -NEGATIVE_TOL,
        classification=(
            Classification.ENTANGLED if ppt.minimum < -NEGATIVE_TOL else Classification.SEPARABLE
        ),
        boundary_low=low,
        boundary_high=high,
    )
