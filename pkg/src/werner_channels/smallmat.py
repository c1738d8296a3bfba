"""Small dense complex matrices.

Everything here is sized for two-qubit problems (dimension 4 and below).
The Jacobi eigensolver and the eigendecomposition-based matrix power act as
the brute-force reference that the closed-form Werner expressions are
checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, ValidationError

HERMITIAN_TOL = 1e-10
EQUAL_TOL = 1e-12
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 50


class ComplexMatrix:
    """Immutable square complex matrix."""

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise DimensionError(f"matrix must be square and non-empty, got shape {a.shape}")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def identity(cls, dim: int) -> ComplexMatrix:
        return cls(np.eye(dim))

    @classmethod
    def diag(cls, values: Iterable[complex]) -> ComplexMatrix:
        return cls(np.diag(list(values)))

    @property
    def dim(self) -> int:
        return self._a.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the underlying array."""
        return self._a

    def __getitem__(self, idx):
        return self._a[idx]

    def __matmul__(self, other: ComplexMatrix) -> ComplexMatrix:
        _check_same_dim(self, other)
        return ComplexMatrix(self._a @ other._a)

    def __add__(self, other: ComplexMatrix) -> ComplexMatrix:
        _check_same_dim(self, other)
        return ComplexMatrix(self._a + other._a)

    def __sub__(self, other: ComplexMatrix) -> ComplexMatrix:
        _check_same_dim(self, other)
        return ComplexMatrix(self._a - other._a)

    def __mul__(self, scalar: complex) -> ComplexMatrix:
        return ComplexMatrix(self._a * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> ComplexMatrix:
        return ComplexMatrix(self._a / scalar)

    def dagger(self) -> ComplexMatrix:
        return ComplexMatrix(self._a.conj().T)

    def transpose(self) -> ComplexMatrix:
        return ComplexMatrix(self._a.T)

    def trace(self) -> complex:
        return complex(np.trace(self._a))

    def max_abs_diff(self, other: ComplexMatrix) -> float:
        _check_same_dim(self, other)
        return float(np.max(np.abs(self._a - other._a)))

    def allclose(self, other: ComplexMatrix, tol: float = EQUAL_TOL) -> bool:
        return self.dim == other.dim and self.max_abs_diff(other) <= tol

    def hermitian_defect(self) -> float:
        """Largest entrywise |m - m^dagger|."""
        return float(np.max(np.abs(self._a - self._a.conj().T)))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.hermitian_defect() <= tol

    # Equality is tolerance based; hashing would be inconsistent with it.
    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return self.allclose(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"ComplexMatrix({self._a.tolist()!r})"


def _check_same_dim(lhs: ComplexMatrix, rhs: ComplexMatrix) -> None:
    if lhs.dim != rhs.dim:
        raise DimensionError(f"dimension mismatch: {lhs.dim} vs {rhs.dim}")


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a Hermitian matrix, largest first."""

    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def sorted_from(cls, values: Iterable[float]) -> Spectrum:
        # sorted() is stable, so tied values keep their incoming order
        return cls(tuple(sorted((float(v) for v in values), key=lambda v: -v)))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def total(self) -> float:
        return float(sum(self.values))

    @property
    def minimum(self) -> float:
        return min(self.values)

    def allclose(self, other: Sequence[float], tol: float = EQUAL_TOL) -> bool:
        other = list(other)
        return len(other) == len(self.values) and all(
            abs(a - b) <= tol for a, b in zip(self.values, sorted(other, reverse=True))
        )


def tensor_product(lhs: ComplexMatrix, rhs: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product; block (i, j) of the result is ``lhs[i, j] * rhs``."""
    return ComplexMatrix(np.kron(lhs.entries, rhs.entries))


def partial_transpose_second(m: ComplexMatrix) -> ComplexMatrix:
    """Transpose the second qubit of a 4x4 matrix on C^2 (x) C^2.

    Row index (i1, i2) maps to 2*i1 + i2; output[(i1,i2),(j1,j2)] is
    input[(i1,j2),(j1,i2)].
    """
    if m.dim != 4:
        raise DimensionError(f"partial transpose needs a 4x4 matrix, got {m.dim}x{m.dim}")
    src = m.entries
    out = np.empty((4, 4), dtype=complex)
    for i1 in range(2):
        for i2 in range(2):
            for j1 in range(2):
                for j2 in range(2):
                    out[2 * i1 + i2, 2 * j1 + j2] = src[2 * i1 + j2, 2 * j1 + i2]
    return ComplexMatrix(out)


def _require_hermitian(m: ComplexMatrix, tol: float) -> None:
    defect = m.hermitian_defect()
    if defect > tol:
        raise ValidationError(f"matrix is not Hermitian: max |m - m^dagger| = {defect:.3e}")


def jacobi_eigh(
    m: ComplexMatrix,
    tol: float = HERMITIAN_TOL,
    off_tol: float = JACOBI_OFF_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Returns ``(values, vectors)`` in Jacobi output order (unsorted); the
    eigenvectors are the columns of ``vectors``. Sweeps stop once the
    off-diagonal Frobenius norm drops below ``off_tol * max(1, ||m||_F)`` or
    after ``max_sweeps``.
    """
    _require_hermitian(m, tol)
    a = np.array(m.entries, dtype=complex)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(float(np.linalg.norm(a)), 1.0)

    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < off_tol * scale:
            break
        for k in range(n - 1):
            for l in range(k + 1, n):
                g = a[k, l]
                mag = abs(g)
                if mag < 1e-300:
                    continue
                phase = g / mag
                tau = (a[l, l].real - a[k, k].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                rot = np.eye(n, dtype=complex)
                rot[k, k] = c
                rot[l, l] = c
                rot[k, l] = s * phase
                rot[l, k] = -s * np.conj(phase)
                a = rot.conj().T @ a @ rot
                a[k, l] = a[l, k] = 0.0
                v = v @ rot

    return np.real(np.diag(a)).copy(), v


def hermitian_eigenvalues(m: ComplexMatrix, tol: float = HERMITIAN_TOL) -> Spectrum:
    """Real eigenvalues of a Hermitian matrix, sorted descending.

    Raises ValidationError when ``m`` deviates from Hermitian by more than ``tol``.
    """
    values, _ = jacobi_eigh(m, tol=tol)
    return Spectrum.sorted_from(values)


def hermitian_eigensystem(m: ComplexMatrix, tol: float = HERMITIAN_TOL) -> tuple[Spectrum, ComplexMatrix]:
    """Eigenvalues (descending) and matching eigenvector columns."""
    values, vectors = jacobi_eigh(m, tol=tol)
    order = sorted(range(len(values)), key=lambda i: -values[i])
    return Spectrum(tuple(values[order])), ComplexMatrix(vectors[:, order])


def matrix_power(m: ComplexMatrix, n: int, tol: float = HERMITIAN_TOL) -> ComplexMatrix:
    """``m**n`` for Hermitian ``m`` through ``S D^n S^dagger``."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"power must be a positive integer, got {n!r}")
    values, vectors = jacobi_eigh(m, tol=tol)
    powered = vectors @ np.diag(values.astype(complex) ** int(n)) @ vectors.conj().T
    return ComplexMatrix(powered)


def matrix_power_by_multiplication(m: ComplexMatrix, n: int) -> ComplexMatrix:
    """``m`` multiplied by itself ``n`` times, left to right."""
    if n < 1:
        raise ValidationError(f"power must be a positive integer, got {n!r}")
    out = m
    for _ in range(n - 1):
        out = out @ m
    return out


def read_matrix(path: str | Path) -> ComplexMatrix:
    """Parse the plain-text matrix format: a dimension line, then dim**2 lines ``re im``."""
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ValidationError(f"{path}: empty matrix file")
    dim = int(lines[0][0])
    body = lines[1:]
    if len(body) != dim * dim:
        raise ValidationError(f"{path}: expected {dim * dim} entries, found {len(body)}")
    values = [complex(float(re), float(im)) for re, im in body]
    return ComplexMatrix(np.array(values).reshape(dim, dim))


def write_matrix(m: ComplexMatrix, path: str | Path) -> None:
    rows = [str(m.dim)]
    rows += [f"{float(z.real)!r} {float(z.imag)!r}" for z in m.entries.ravel()]
    Path(path).write_text("\n".join(rows) + "\n")
