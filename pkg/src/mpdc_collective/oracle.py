"""Independent reference paths used to check the primary calculation.

Two routes that share no algebra with :mod:`gaussian`:

* a fixed-step classic Runge-Kutta integration of ``dG/dtau = M G``;
* evolution of the full ``4n x 4n`` micro-mode covariance matrix under the
  real symplectic map induced by ``R(tau)``, followed by projection onto the
  collective quadratures.

The oracle builds its own generator directly from the interaction graph, so
the pairwise pattern is also checked against a numerically propagated
solution rather than its closed form.
"""

from __future__ import annotations

import numpy as np

from .dynamics import Propagator, matrix_exponential
from .errors import ConfigError
from .gaussian import CollectiveCM, ThermalState, thermal_state
from .model import ModelConfig, build_graph, build_grid

__all__ = [
    "integrate_Z",
    "graph_generator",
    "oracle_propagator",
    "micro_symplectic",
    "initial_micro_cm",
    "collective_projector",
    "micro_cm_evolve_and_project",
    "STEPS_PER_UNIT_TAU",
]

STEPS_PER_UNIT_TAU = 10_000


def integrate_Z(M: np.ndarray, tau: float, steps: int) -> np.ndarray:
    """Classic RK4 solution of ``dG/dtau = M G`` with ``G(0) = I``."""
    if steps < 1:
        raise ConfigError("steps must be >= 1")
    M = np.asarray(M, dtype=complex)
    h = tau / steps
    # one RK4 step is linear in G, so its four stages are built once on I
    eye = np.eye(M.shape[0], dtype=complex)
    k1 = M @ eye
    k2 = M @ (eye + 0.5 * h * k1)
    k3 = M @ (eye + 0.5 * h * k2)
    k4 = M @ (eye + h * k3)
    step = eye + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    G = eye.copy()
    for _ in range(steps):
        G = step @ G
    return G


def graph_generator(config: ModelConfig) -> np.ndarray:
    """Co-rotating generator assembled edge by edge from the interaction graph."""
    graph = build_graph(config)
    n, m = config.n, config.m
    spacing = config.delta
    M = np.zeros((2 * n, 2 * n), dtype=complex)
    for idx, k in enumerate(range(-m, m + 1)):
        M[idx, idx] = -1j * k * spacing
        M[n + idx, n + idx] = 1j * k * spacing
    pump = np.exp(-1j * config.pump_phase)
    for edge in graph.edges:
        (_, k), (_, l) = sorted(edge)
        M[k + m, n + l + m] += graph.coupling * pump
        M[n + l + m, k + m] += graph.coupling * np.conj(pump)
    return M


def oracle_propagator(config: ModelConfig, tau: float, method: str = "expm",
                      steps_per_unit: int = STEPS_PER_UNIT_TAU) -> Propagator:
    M = graph_generator(config)
    if method == "rk4":
        steps = max(1, int(np.ceil(abs(tau) * steps_per_unit)))
        G = integrate_Z(M, tau, steps)
    elif method == "expm":
        G = matrix_exponential(M, tau)
    else:
        raise ConfigError(f"unknown method {method!r}")
    n = config.n
    frame = np.concatenate([np.full(n, np.exp(-1j * config.omega1_bar * tau)),
                            np.full(n, np.exp(1j * config.omega2_bar * tau))])
    return Propagator(frame[:, None] * G, float(tau))


def micro_symplectic(prop: Propagator) -> np.ndarray:
    """Real ``4n x 4n`` symplectic matrix on interleaved ``(q_i, p_i)`` pairs.

    Modes are ordered signal ``k = -m..m`` then idler ``l = -m..m``. Writing
    the annihilation operators as ``c(tau) = U c0 + V c0^dagger`` gives
    ``q' = Re(U+V) q - Im(U-V) p`` and ``p' = Im(U+V) q + Re(U-V) p``.
    """
    r, n = prop.r, prop.n
    U = np.zeros((2 * n, 2 * n), dtype=complex)
    V = np.zeros((2 * n, 2 * n), dtype=complex)
    U[:n, :n] = r[:n, :n]
    V[:n, n:] = r[:n, n:]
    # idler rows of R describe b^dagger; conjugate them to get b
    V[n:, :n] = np.conj(r[n:, :n])
    U[n:, n:] = np.conj(r[n:, n:])
    P, D = U + V, U - V
    S = np.empty((4 * n, 4 * n))
    S[0::2, 0::2] = P.real
    S[0::2, 1::2] = -D.imag
    S[1::2, 0::2] = P.imag
    S[1::2, 1::2] = D.real
    return S


def initial_micro_cm(state: ThermalState) -> np.ndarray:
    occ = np.concatenate([state.nbar1, state.nbar2])
    return np.diag(np.repeat(occ + 0.5, 2))


def collective_projector(n: int) -> np.ndarray:
    """Rows give ``(Q1, P1, Q2, P2)`` as uniform sums of micro quadratures."""
    proj = np.zeros((4, 4 * n))
    w = 1.0 / np.sqrt(n)
    for i in range(n):
        proj[0, 2 * i] = w
        proj[1, 2 * i + 1] = w
        proj[2, 2 * (n + i)] = w
        proj[3, 2 * (n + i) + 1] = w
    return proj


def micro_cm_evolve_and_project(config: ModelConfig, tau: float,
                                state: ThermalState | None = None,
                                prop: Propagator | None = None,
                                return_micro: bool = False):
    """Collective CM obtained by evolving every micro second moment.

    ``prop`` defaults to :func:`oracle_propagator` with the matrix exponential.
    """
    state = state if state is not None else thermal_state(config, build_grid(config))
    prop = prop if prop is not None else oracle_propagator(config, tau)
    if prop.n != state.n or state.n != config.n:
        raise ConfigError("dimension mismatch between config, state and propagator")
    S = micro_symplectic(prop)
    micro = S @ initial_micro_cm(state) @ S.T
    micro = 0.5 * (micro + micro.T)
    proj = collective_projector(state.n)
    cm = CollectiveCM(proj @ micro @ proj.T)
    if return_micro:
        return cm, micro
    return cm
