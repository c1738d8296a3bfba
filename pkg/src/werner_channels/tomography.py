"""Spin tomograms: diagonal elements of a density matrix after an SU(2) rotation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, ValidationError
from .smallmat import ComplexMatrix, hermitian_eigenvalues, tensor_product
from .werner import WernerCoefficients

DENSITY_TOL = 1e-10


@dataclass(frozen=True)
class EulerAngles:
    """Measurement direction as Euler angles in radians."""

    theta: float = 0.0
    phi: float = 0.0
    psi: float = 0.0

    def normalized(self) -> EulerAngles:
        """Same rotation axis with theta in [0, pi] and phi, psi in [0, 2*pi).

        Only the (theta, psi) dependence of the tomogram is preserved; a
        negative theta flips to -theta with psi shifted by pi.
        """
        theta = math.remainder(self.theta, 2 * math.pi)
        psi = self.psi
        if theta < 0:
            theta, psi = -theta, psi + math.pi
        return EulerAngles(theta, self.phi % (2 * math.pi), psi % (2 * math.pi))


class Spin(str, enum.Enum):
    UP = "up"
    DOWN = "down"

    @property
    def index(self) -> int:
        return 0 if self is Spin.UP else 1


class TwoSpinOutcome(NamedTuple):
    m1: Spin
    m2: Spin

    @property
    def index(self) -> int:
        return 2 * self.m1.index + self.m2.index

    @property
    def label(self) -> str:
        return self.m1.value[0] + self.m2.value[0]


OUTCOMES = tuple(TwoSpinOutcome(a, b) for a in Spin for b in Spin)
UU, UD, DU, DD = OUTCOMES


def su2_matrix(angles: EulerAngles) -> ComplexMatrix:
    half = angles.theta / 2.0
    c, s = math.cos(half), math.sin(half)
    plus = (angles.phi + angles.psi) / 2.0
    minus = (angles.phi - angles.psi) / 2.0
    return ComplexMatrix(
        [
            [c * np.exp(1j * plus), s * np.exp(1j * minus)],
            [-s * np.exp(-1j * minus), c * np.exp(-1j * plus)],
        ]
    )


def validate_density(rho: ComplexMatrix, tol: float = DENSITY_TOL) -> None:
    """Raise ValidationError unless ``rho`` is Hermitian, unit trace and PSD."""
    if not rho.is_hermitian(tol):
        raise ValidationError(f"density matrix is not Hermitian (defect {rho.hermitian_defect():.3e})")
    tr = rho.trace()
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"density matrix trace is {tr.real:.12g}, expected 1")
    low = hermitian_eigenvalues(rho, tol).minimum
    if low < -tol:
        raise ValidationError(f"density matrix has negative eigenvalue {low:.3e}")


def tomogram_single(rho: ComplexMatrix, angles: EulerAngles, m: Spin) -> float:
    if rho.dim != 2:
        raise DimensionError(f"single-spin tomogram needs a 2x2 matrix, got {rho.dim}x{rho.dim}")
    validate_density(rho)
    u = su2_matrix(angles)
    rotated = u @ rho @ u.dagger()
    k = Spin(m).index
    return float(rotated[k, k].real)


def tomogram_general(
    rho: ComplexMatrix,
    angles1: EulerAngles,
    angles2: EulerAngles,
    outcome: TwoSpinOutcome,
    validate: bool = True,
) -> float:
    """Joint probability of (m1, m2) after rotating each qubit by its own SU(2) element."""
    if rho.dim != 4:
        raise DimensionError(f"two-spin tomogram needs a 4x4 matrix, got {rho.dim}x{rho.dim}")
    if validate:
        validate_density(rho)
    big_u = tensor_product(su2_matrix(angles1), su2_matrix(angles2))
    rotated = big_u @ rho @ big_u.dagger()
    k = TwoSpinOutcome(*outcome).index
    return float(rotated[k, k].real)


def tomogram_closed(
    coeffs: WernerCoefficients,
    angles1: EulerAngles,
    angles2: EulerAngles,
    outcome: TwoSpinOutcome,
) -> float:
    """Closed-form tomogram of a Werner-shaped state; no phi dependence."""
    c1, s1 = math.cos(angles1.theta / 2.0), math.sin(angles1.theta / 2.0)
    c2, s2 = math.cos(angles2.theta / 2.0), math.sin(angles2.theta / 2.0)
    aligned = c1 * c1 * c2 * c2 + s1 * s1 * s2 * s2
    crossed = s1 * s1 * c2 * c2 + c1 * c1 * s2 * s2
    coherence = (
        coeffs.c / 2.0 * math.sin(angles1.theta) * math.sin(angles2.theta) * math.cos(angles1.psi + angles2.psi)
    )
    m1, m2 = TwoSpinOutcome(*outcome)
    if m1 is m2:
        return coeffs.a * aligned + coeffs.b * crossed + coherence
    return coeffs.a * crossed + coeffs.b * aligned - coherence


def tomogram_table(coeffs: WernerCoefficients, angles1: EulerAngles, angles2: EulerAngles) -> dict[str, float]:
    """All four joint outcomes keyed ``uu``, ``ud``, ``du``, ``dd``."""
    return {o.label: tomogram_closed(coeffs, angles1, angles2, o) for o in OUTCOMES}
