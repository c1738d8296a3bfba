"""CHSH correlations of Werner-channel states and their maximization.

For the Werner family every two-direction correlator is 2C times a purely
angular factor, so the CHSH combination splits into 2C(p) * zeta(a, b, c, d).
The optimizer below does not rely on that split; it searches the eight
angles (theta, psi per direction) directly and the factorized optimum
2|C| * 2*sqrt(2) serves as its check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import OptimizerError
from .tomography import DD, DU, UD, UU, EulerAngles, tomogram_closed
from .werner import WernerCoefficients, WernerParameters, werner_coefficients

TSIRELSON = 2.0 * math.sqrt(2.0)
CLASSICAL_BOUND = 2.0


@dataclass(frozen=True)
class OptimizerSettings:
    theta_steps: int = 8  # theta grid is {0, pi/theta_steps, ..., pi}
    psi_steps: int = 8  # psi grid is {0, 2pi/psi_steps, ...}, 2pi dropped as a duplicate of 0
    seeds: int = 16
    max_evals: int = 2000
    tol: float = 1e-8
    initial_step: float = math.pi / 16


@dataclass(frozen=True)
class ChshConfiguration:
    dir_a: EulerAngles
    dir_b: EulerAngles
    dir_c: EulerAngles
    dir_d: EulerAngles
    value: float
    converged: bool = True
    evaluations: int = field(default=0, compare=False)

    @property
    def directions(self) -> tuple[EulerAngles, EulerAngles, EulerAngles, EulerAngles]:
        return (self.dir_a, self.dir_b, self.dir_c, self.dir_d)


def _pair(theta_a: float, psi_a: float, theta_b: float, psi_b: float) -> float:
    return math.cos(theta_a) * math.cos(theta_b) + math.sin(theta_a) * math.sin(theta_b) * math.cos(psi_a + psi_b)


def correlator(coeffs: WernerCoefficients, alpha: EulerAngles, beta: EulerAngles) -> float:
    """W(uu) - W(ud) - W(du) + W(dd) along directions alpha and beta."""
    return 2.0 * coeffs.c * _pair(alpha.theta, alpha.psi, beta.theta, beta.psi)


def correlator_from_tomogram(coeffs: WernerCoefficients, alpha: EulerAngles, beta: EulerAngles) -> float:
    w = {o: tomogram_closed(coeffs, alpha, beta, o) for o in (UU, UD, DU, DD)}
    return w[UU] - w[UD] - w[DU] + w[DD]


def zeta(dirs: Sequence[EulerAngles]) -> float:
    """Angular factor of the CHSH combination; lies in [-2*sqrt(2), 2*sqrt(2)]."""
    a, b, c, d = dirs
    return (
        _pair(a.theta, a.psi, b.theta, b.psi)
        + _pair(a.theta, a.psi, c.theta, c.psi)
        + _pair(d.theta, d.psi, b.theta, b.psi)
        - _pair(d.theta, d.psi, c.theta, c.psi)
    )


def bell_correlation(coeffs: WernerCoefficients, dirs: Sequence[EulerAngles]) -> float:
    """<M_ab> + <M_ac> + <M_db> - <M_dc>."""
    a, b, c, d = dirs
    return (
        correlator(coeffs, a, b)
        + correlator(coeffs, a, c)
        + correlator(coeffs, d, b)
        - correlator(coeffs, d, c)
    )


def analytic_max_bell(params: WernerParameters) -> float:
    return 2.0 * abs(werner_coefficients(params).c) * TSIRELSON


def nelder_mead(
    func: Callable[[np.ndarray], float],
    x0: np.ndarray,
    step: float,
    tol: float,
    max_evals: int,
) -> tuple[np.ndarray, float, int, bool]:
    """Minimize ``func`` from ``x0``.

    Returns ``(x_best, f_best, evaluations, converged)``; convergence means the
    simplex diameter (max vertex distance from the best vertex) fell below ``tol``.
    """
    dim = len(x0)
    simplex = [np.array(x0, dtype=float)]
    for i in range(dim):
        v = np.array(x0, dtype=float)
        v[i] += step
        simplex.append(v)
    values = [func(v) for v in simplex]
    evals = dim + 1

    while True:
        order = sorted(range(dim + 1), key=lambda i: values[i])
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        best = simplex[0]
        diameter = max(float(np.max(np.abs(v - best))) for v in simplex[1:])
        if diameter < tol:
            return best, values[0], evals, True
        if evals >= max_evals:
            return best, values[0], evals, False

        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        xr = centroid + (centroid - worst)
        fr = func(xr)
        evals += 1
        if fr < values[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = func(xe)
            evals += 1
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-1]:
            xc = centroid + 0.5 * (xr - centroid)
            fc = func(xc)
            evals += 1
            if fc <= fr:
                simplex[-1], values[-1] = xc, fc
                continue
        else:
            xc = centroid + 0.5 * (worst - centroid)
            fc = func(xc)
            evals += 1
            if fc < values[-1]:
                simplex[-1], values[-1] = xc, fc
                continue
        for i in range(1, dim + 1):
            simplex[i] = best + 0.5 * (simplex[i] - best)
            values[i] = func(simplex[i])
        evals += dim


def _grid_directions(opt: OptimizerSettings) -> list[tuple[float, float]]:
    dirs = []
    for i in range(opt.theta_steps + 1):
        theta = math.pi * i / opt.theta_steps
        if i in (0, opt.theta_steps):
            dirs.append((theta, 0.0))  # psi is irrelevant at the poles
            continue
        for j in range(opt.psi_steps):
            dirs.append((theta, 2.0 * math.pi * j / opt.psi_steps))
    return dirs


def _grid_seeds(coeffs: WernerCoefficients, opt: OptimizerSettings) -> list[np.ndarray]:
    """Best grid configurations, one per (a, d) pair, top ``opt.seeds`` of them.

    The CHSH sum splits as [K(a,b) + K(d,b)] + [K(a,c) - K(d,c)], so for fixed
    (a, d) the best b and c are found independently.
    """
    grid = np.array(_grid_directions(opt))
    th, ps = grid[:, 0], grid[:, 1]
    k = 2.0 * coeffs.c * (
        np.outer(np.cos(th), np.cos(th)) + np.outer(np.sin(th), np.sin(th)) * np.cos(ps[:, None] + ps[None, :])
    )
    sum_ab = k[:, None, :] + k[None, :, :]  # [a, d, b]
    diff_ac = k[:, None, :] - k[None, :, :]  # [a, d, c]
    best_b = np.argmax(sum_ab, axis=2)
    best_c = np.argmax(diff_ac, axis=2)
    score = np.max(sum_ab, axis=2) + np.max(diff_ac, axis=2)

    n = len(grid)
    flat = score.ravel()
    # stable sort on -score: ties resolved by (a, d) index order
    order = np.argsort(-flat, kind="stable")[: opt.seeds]
    seeds = []
    for idx in order:
        a, d = divmod(int(idx), n)
        b, c = best_b[a, d], best_c[a, d]
        seeds.append(np.array([th[a], ps[a], th[b], ps[b], th[c], ps[c], th[d], ps[d]]))
    return seeds


def _angles(x: Sequence[float]) -> list[EulerAngles]:
    return [EulerAngles(theta=x[2 * i], psi=x[2 * i + 1]).normalized() for i in range(4)]


def _tie_key(dirs: Sequence[EulerAngles]) -> tuple[float, ...]:
    return tuple(v for d in dirs for v in (d.theta, d.psi))


def maximize_bell(params: WernerParameters, opt: OptimizerSettings | None = None) -> ChshConfiguration:
    """Multi-start search for the largest CHSH value over measurement directions."""
    opt = opt or OptimizerSettings()
    coeffs = werner_coefficients(params)

    def neg_b(x: np.ndarray) -> float:
        return -bell_correlation(coeffs, [EulerAngles(theta=x[2 * i], psi=x[2 * i + 1]) for i in range(4)])

    best: ChshConfiguration | None = None
    total_evals = 0
    any_converged = False
    for seed in _grid_seeds(coeffs, opt):
        x, fx, evals, converged = nelder_mead(neg_b, seed, opt.initial_step, opt.tol, opt.max_evals)
        total_evals += evals
        any_converged |= converged
        dirs = _angles(x)
        candidate = ChshConfiguration(*dirs, value=-fx, converged=converged)
        if (
            best is None
            or candidate.value > best.value
            or (candidate.value == best.value and _tie_key(dirs) < _tie_key(best.directions))
        ):
            best = candidate

    assert best is not None
    best = ChshConfiguration(*best.directions, value=best.value, converged=best.converged, evaluations=total_evals)
    if not any_converged:
        raise OptimizerError(
            f"no CHSH seed converged within {opt.max_evals} evaluations at p={params.p}, n={params.n}",
            best=best,
        )
    return best
