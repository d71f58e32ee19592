"""Thermal initial states, collective covariance matrices and entanglement.

Quadratures are ``Q = (A + A^dagger)/sqrt(2)`` and
``P = -i (A - A^dagger)/sqrt(2)``, so the vacuum variance is 1/2 and the
partially transposed symplectic eigenvalue separates at 1/2. Covariance
matrices are ordered ``(Q1, P1, Q2, P2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dynamics import CollectiveCoefficients, collective_coefficients, propagator
from .errors import ConfigError, NumericalFailure
from .model import FrequencyGrid, LogBase, ModelConfig, Pattern, build_grid

__all__ = [
    "ThermalState",
    "CollectiveCM",
    "thermal_occupation",
    "thermal_state",
    "cm_pairwise",
    "cm_one_to_all",
    "collective_cm",
    "invariants",
    "s_criterion",
    "SCriterion",
    "partial_transpose_eigenvalue",
    "symplectic_eigenvalues",
    "log_negativity",
    "symplectic_form",
]


# largest tolerated relative error of det(Sigma), estimated as eps * cond(Sigma)
PRECISION_LIMIT = 1e-7


def thermal_occupation(omega, theta):
    """Bose-Einstein mean photon number ``1/(exp(omega/theta) - 1)``.

    ``theta = 0`` is the exact vacuum. Works elementwise on arrays.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ConfigError("frequencies must be positive")
    if theta < 0:
        raise ConfigError("theta must be nonnegative")
    if theta == 0:
        out = np.zeros_like(omega)
    else:
        with np.errstate(over="ignore"):
            out = 1.0 / np.expm1(omega / theta)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ThermalState:
    """Initial thermal occupations of every micro-mode.

    ``nbar1`` and ``nbar2`` are ordered ``k = -m .. m``; ``N10`` and ``N20`` are
    the mean photon numbers of the initial collective modes.
    """

    nbar1: np.ndarray
    nbar2: np.ndarray

    @property
    def n(self) -> int:
        return len(self.nbar1)

    @property
    def N10(self) -> float:
        return float(np.mean(self.nbar1))

    @property
    def N20(self) -> float:
        return float(np.mean(self.nbar2))

    @property
    def S0(self) -> float:
        N1, N2 = self.N10, self.N20
        return N1 * N2 * (N1 + 1) * (N2 + 1)

    @classmethod
    def vacuum(cls, n: int) -> "ThermalState":
        return cls(np.zeros(n), np.zeros(n))


def thermal_state(config: ModelConfig, grid: FrequencyGrid | None = None) -> ThermalState:
    grid = grid if grid is not None else build_grid(config)
    return ThermalState(thermal_occupation(grid.freqs1, config.theta),
                        thermal_occupation(grid.freqs2, config.theta))


@dataclass(frozen=True)
class CollectiveCM:
    """4x4 covariance matrix of the collective quadratures."""

    sigma: np.ndarray

    @property
    def alpha(self) -> np.ndarray:
        return self.sigma[:2, :2]

    @property
    def beta(self) -> np.ndarray:
        return self.sigma[2:, 2:]

    @property
    def gamma(self) -> np.ndarray:
        return self.sigma[:2, 2:]

    @property
    def det_gamma(self) -> float:
        s = self.sigma
        return float(s[0, 2] * s[1, 3] - s[0, 3] * s[1, 2])

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.sigma, dtype=dtype)


def _assemble(n1: float, n2: float, corr: complex) -> CollectiveCM:
    a, b = n1 + 0.5, n2 + 0.5
    c, d = corr.real, corr.imag
    sigma = np.array([[a, 0.0, c, d],
                      [0.0, a, d, -c],
                      [c, d, b, 0.0],
                      [d, -c, 0.0, b]])
    return CollectiveCM(sigma)


def cm_pairwise(state: ThermalState, tau: float, omega0_bar: float,
                pump_phase: float = 0.0) -> CollectiveCM:
    """Closed-form collective CM for the pairwise pattern.

    Depends on the micro occupations only through ``N10`` and ``N20``.
    """
    N1, N2 = state.N10, state.N20
    ch2, sh2 = np.cosh(tau) ** 2, np.sinh(tau) ** 2
    mean1 = N1 * ch2 + (N2 + 1) * sh2
    mean2 = N2 * ch2 + (N1 + 1) * sh2
    corr = 0.5 * np.sinh(2 * tau) * (N1 + N2 + 1) * np.exp(-1j * (omega0_bar * tau + pump_phase))
    return _assemble(mean1, mean2, corr)


def cm_one_to_all(state: ThermalState, coeffs: CollectiveCoefficients) -> CollectiveCM:
    """Collective CM from the collective coefficients of any propagator.

    Mean numbers are the normally ordered expectations, so at ``tau = 0`` they
    reduce to ``N10`` and ``N20``.
    """
    if coeffs.size != state.n:
        raise ConfigError(f"state has {state.n} modes per packet, coefficients {coeffs.size}")
    nb1, nb2 = state.nbar1, state.nbar2
    m2, n2 = np.abs(coeffs.m) ** 2, np.abs(coeffs.n) ** 2
    t2, u2 = np.abs(coeffs.t) ** 2, np.abs(coeffs.u) ** 2
    mean1 = np.sum(nb1 * m2) + np.sum((nb2 + 1) * n2)
    mean2 = np.sum((nb1 + 1) * t2) + np.sum(nb2 * u2)
    corr = (np.sum((nb1 + 0.5) * coeffs.m * np.conj(coeffs.t))
            + np.sum((nb2 + 0.5) * coeffs.n * np.conj(coeffs.u)))
    return _assemble(float(mean1), float(mean2), complex(corr))


def collective_cm(config: ModelConfig, tau: float, state: ThermalState | None = None) -> CollectiveCM:
    grid = build_grid(config)
    state = state if state is not None else thermal_state(config, grid)
    if config.pattern is Pattern.PAIRWISE:
        if tau < 0:
            raise ConfigError("tau must be nonnegative")
        return cm_pairwise(state, tau, config.omega0_bar, config.pump_phase)
    coeffs = collective_coefficients(propagator(config, tau, grid))
    cm = cm_one_to_all(state, coeffs)
    if not np.all(np.isfinite(cm.sigma)):
        raise NumericalFailure(f"non-finite covariance matrix at tau={tau}")
    return cm


def invariants(cm: CollectiveCM) -> tuple:
    """``(det Sigma, det alpha + det beta + 2 det gamma)``."""
    s = np.asarray(cm.sigma)
    I1 = float(np.linalg.det(s))
    I2 = float(np.linalg.det(s[:2, :2]) + np.linalg.det(s[2:, 2:]) + 2 * np.linalg.det(s[:2, 2:]))
    return I1, I2


class SCriterion(NamedTuple):
    S: float
    S0: float
    entangled: bool


def s_criterion(cm: CollectiveCM, state: ThermalState) -> SCriterion:
    """Separability test ``S < 0`` for the collective state.

    ``S`` is evaluated from the covariance matrix itself,
    ``I1 - I2/4 + 1/16 - |det gamma|``, which is exactly the PPT condition.
    ``S0`` is the product formula of the initial collective photon numbers;
    ``S = S0 - |det gamma|`` holds exactly whenever the collective pair evolves
    as a closed two-mode system (pairwise, ``n = 1``, or zero bandwidth).
    """
    I1, I2 = invariants(cm)
    S = I1 - I2 / 4 + 1 / 16 - abs(cm.det_gamma)
    return SCriterion(S, state.S0, S < 0)


def symplectic_form(modes: int) -> np.ndarray:
    return np.kron(np.eye(modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(sigma) -> np.ndarray:
    """Symplectic spectrum of a real covariance matrix, ascending."""
    sigma = np.asarray(sigma, dtype=float)
    omega = symplectic_form(sigma.shape[0] // 2)
    ev = np.abs(np.linalg.eigvals(1j * omega @ sigma))
    return np.sort(ev)[::2]


def partial_transpose_eigenvalue(cm: CollectiveCM) -> float:
    """Smallest symplectic eigenvalue of the CM with ``P2 -> -P2``."""
    s = np.asarray(cm.sigma)
    cond = np.linalg.cond(s)
    if not cond * np.finfo(float).eps < PRECISION_LIMIT:
        raise NumericalFailure(f"covariance matrix too ill-conditioned for double precision "
                               f"(condition number {cond:.3g})")
    I1 = np.linalg.det(s)
    delta = np.linalg.det(s[:2, :2]) + np.linalg.det(s[2:, 2:]) - 2 * np.linalg.det(s[:2, 2:])
    disc = delta ** 2 - 4 * I1
    if disc < 0:
        if disc < -1e-9 * max(1.0, delta ** 2):
            raise NumericalFailure(f"unphysical covariance matrix: discriminant {disc:.3g}")
        disc = 0.0
    nu2 = 2 * I1 / (delta + np.sqrt(disc))
    if not nu2 > 0:
        raise NumericalFailure(f"unphysical covariance matrix: nu^2 = {nu2:.3g}")
    return float(np.sqrt(nu2))


def log_negativity(cm: CollectiveCM, base: LogBase | str = LogBase.NATURAL) -> float:
    base = LogBase.parse(base)
    nu = partial_transpose_eigenvalue(cm)
    return max(0.0, float(-base.log(2 * nu)))
