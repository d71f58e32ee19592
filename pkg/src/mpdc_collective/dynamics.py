"""Micro-mode Bogoliubov propagators and collective-amplitude coefficients.

Operator ordering is fixed throughout: rows and columns ``0..n-1`` hold the
signal annihilation operators ``a_k`` and ``n..2n-1`` the idler creation
operators ``b_l^dagger``, each block ordered ``k = -m .. m``. A propagator
``R`` maps the initial vector to the time-``tau`` vector, ``Y(tau) = R Y(0)``.

In the frame co-rotating with the central frequencies the equations of motion
are autonomous, ``dZ/dtau = M Z``. Signal mode ``k`` sees the detuning
``-i k delta`` and idler mode ``l`` sees ``+i l delta``; energy-conserving
pairs ``(k, -k)`` therefore share one diagonal entry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConfigError, NumericalFailure
from .model import FrequencyGrid, ModelConfig, Pattern, build_grid

__all__ = [
    "Propagator",
    "CollectiveCoefficients",
    "pairwise_propagator",
    "build_M",
    "matrix_exponential",
    "matrix_exponential_eig",
    "one_to_all_propagator",
    "propagator",
    "collective_coefficients",
    "bogoliubov_sums",
]


@dataclass(frozen=True)
class Propagator:
    r: np.ndarray
    tau: float

    @property
    def n(self) -> int:
        return self.r.shape[0] // 2


@dataclass(frozen=True)
class CollectiveCoefficients:
    """Expansion of the collective amplitudes on the initial micro operators.

    ``A(tau) = sum_j m_j a_j0 + sum_j n_j b_j0^dagger`` and
    ``B^dagger(tau) = sum_j t_j a_j0 + sum_j u_j b_j0^dagger``.
    """

    m: np.ndarray
    n: np.ndarray
    t: np.ndarray
    u: np.ndarray

    @property
    def size(self) -> int:
        return len(self.m)


def _check_tau(tau):
    tau = float(tau)
    if not np.isfinite(tau) or tau < 0:
        raise ConfigError(f"tau must be finite and nonnegative, got {tau}")
    return tau


def pairwise_propagator(grid: FrequencyGrid, tau: float, pump_phase: float = 0.0) -> Propagator:
    """Closed-form propagator of ``n`` independent two-mode PDC pairs.

    Signal mode ``k`` is coupled only to idler mode ``-k``.
    """
    tau = _check_tau(tau)
    n = grid.n
    ch, sh = np.cosh(tau), np.sinh(tau)
    pump = np.exp(-1j * pump_phase)
    r = np.zeros((2 * n, 2 * n), dtype=complex)
    for i in range(n):
        partner = n - 1 - i  # k -> -k
        ph1 = np.exp(-1j * grid.freqs1[i] * tau)
        ph2 = np.exp(1j * grid.freqs2[partner] * tau)
        r[i, i] = ph1 * ch
        r[i, n + partner] = ph1 * sh * pump
        r[n + partner, i] = ph2 * sh * np.conj(pump)
        r[n + partner, n + partner] = ph2 * ch
    return Propagator(r, tau)


def build_M(grid: FrequencyGrid, config: ModelConfig) -> np.ndarray:
    """Generator of the co-rotating one-to-all dynamics, in units of ``w``."""
    if config.pattern is not Pattern.ONE_TO_ALL:
        raise ConfigError("build_M applies to the one-to-all pattern; "
                          "use pairwise_propagator for the pairwise pattern")
    n = grid.n
    k = np.arange(-grid.m, grid.m + 1)
    spacing1 = config.bw1 / (2 * grid.m) if grid.m else 0.0
    spacing2 = config.bw2 / (2 * grid.m) if grid.m else 0.0
    detune1 = k * spacing1
    detune2 = k * spacing2
    coupling = np.exp(-1j * config.pump_phase)
    M = np.zeros((2 * n, 2 * n), dtype=complex)
    M[:n, :n] = np.diag(-1j * detune1)
    M[n:, n:] = np.diag(1j * detune2)
    M[:n, n:] = coupling
    M[n:, :n] = np.conj(coupling)
    return M


def matrix_exponential(M: np.ndarray, tau: float = 1.0) -> np.ndarray:
    """``exp(M tau)`` by scaling and squaring with a Pade approximant."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ConfigError(f"matrix must be square, got shape {M.shape}")
    if not np.isfinite(tau):
        raise ConfigError("tau must be finite")
    with np.errstate(over="ignore", invalid="ignore"):
        out = scipy.linalg.expm(M * tau)
    if not np.all(np.isfinite(out)):
        raise NumericalFailure(
            f"matrix exponential overflowed: ||M||_1 = {np.linalg.norm(M, 1):.3g}, "
            f"tau = {tau:.6g}, {np.count_nonzero(~np.isfinite(out))} non-finite entries")
    return out


def matrix_exponential_eig(M: np.ndarray, tau: float = 1.0) -> np.ndarray:
    """``S exp(D tau) S^-1`` through the eigendecomposition of ``M``.

    Fragile when eigenvectors are nearly parallel; kept as a cross-check.
    """
    evals, S = np.linalg.eig(M)
    return (S * np.exp(evals * tau)) @ np.linalg.inv(S)


def one_to_all_propagator(grid: FrequencyGrid, config: ModelConfig, tau: float) -> Propagator:
    tau = _check_tau(tau)
    n = grid.n
    G = matrix_exponential(build_M(grid, config), tau)
    frame = np.concatenate([np.full(n, np.exp(-1j * config.omega1_bar * tau)),
                            np.full(n, np.exp(1j * config.omega2_bar * tau))])
    return Propagator(frame[:, None] * G, tau)


def propagator(config: ModelConfig, tau: float, grid: FrequencyGrid | None = None) -> Propagator:
    """Propagator for ``config.pattern`` at time ``tau``."""
    grid = grid if grid is not None else build_grid(config)
    if config.pattern is Pattern.PAIRWISE:
        return pairwise_propagator(grid, tau, config.pump_phase)
    return one_to_all_propagator(grid, config, tau)


def collective_coefficients(prop: Propagator) -> CollectiveCoefficients:
    r, n = prop.r, prop.n
    norm = 1.0 / np.sqrt(n)
    signal_rows = r[:n].sum(axis=0) * norm
    idler_rows = r[n:].sum(axis=0) * norm
    return CollectiveCoefficients(m=signal_rows[:n], n=signal_rows[n:],
                                  t=idler_rows[:n], u=idler_rows[n:])


def bogoliubov_sums(prop: Propagator) -> np.ndarray:
    """Row sums ``sum_{j<=n}|r_kj|^2 - sum_{j>n}|r_kj|^2``.

    Canonical commutators require ``+1`` on signal rows and ``-1`` on idler rows.
    """
    n = prop.n
    p = np.abs(prop.r) ** 2
    return p[:, :n].sum(axis=1) - p[:, n:].sum(axis=1)
