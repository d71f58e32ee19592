"""Birth time of entanglement, critical temperature and figure data series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .errors import ConfigError, RootNotFound
from .gaussian import ThermalState, collective_cm, log_negativity, s_criterion, thermal_state
from .model import ModelConfig, Pattern, odd_sizes

__all__ = [
    "ScanResult",
    "RootBracket",
    "expand_bracket",
    "bte_pairwise_closed_form",
    "bte_numeric",
    "entanglement_margin",
    "critical_temperature",
    "negativity",
    "scan_negativity_vs_n",
    "fit_slope",
    "figure_series",
    "FIGURE_DEFAULTS",
    "THETA_PER_KELVIN",
]

TAU_MAX = 64.0
THETA_CEILING = 1e6

# Dimensionless temperature per kelvin that makes the one-to-all n = 1 model
# vanish at 4.38 K for tau = 0.6978 (omega1 = 200, omega2 = 400). The same
# factor puts the n = 5 critical point near 1200 K and the zero of the 30 K
# negativity line of the n-scan near n = 5. Equivalent to w ~ 9.67e8 rad/s.
THETA_PER_KELVIN = 135.3917

FIGURE_DEFAULTS = {
    "theta_grid": tuple(float(x) for x in np.geomspace(20.0, 3000.0, 21)),
    "n_values": (1, 3, 5, 7, 9, 11),
    "fig3_n": (3, 5, 7, 9, 11),
    "fig4_theta": (30.0, 300.0, 3000.0),
    "fig5_tau": 0.3324,
    "fig5_theta": 30.0 * THETA_PER_KELVIN,
    "fig6_tau": 0.6978,
    "fig6_theta_grid": tuple(float(x) for x in np.geomspace(10.0, 1e6, 41)),
}


@dataclass
class ScanResult:
    """Labelled table; the first column is the abscissa."""

    label: str
    columns: dict
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        cols = {}
        for name, values in self.columns.items():
            cols[str(name)] = np.asarray(values, dtype=float).ravel()
        self.columns = cols
        lengths = {len(v) for v in cols.values()}
        if len(lengths) > 1:
            raise ValueError(f"columns of unequal length: {sorted(lengths)}")
        if cols:
            x = next(iter(cols.values()))
            if len(x) > 1 and not np.all(np.diff(x) > 0):
                raise ValueError("abscissa must be strictly increasing")

    @property
    def names(self) -> list:
        return list(self.columns)

    @property
    def abscissa(self) -> np.ndarray:
        return self.columns[self.names[0]]

    def __len__(self):
        return len(self.abscissa) if self.columns else 0

    def __getitem__(self, name):
        return self.columns[name]


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float
    tolerance: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("bracket requires lo < hi")
        if np.sign(self.f_lo) * np.sign(self.f_hi) > 0:
            raise ValueError("bracket endpoints do not change sign")

    def solve(self, f: Callable[[float], float], rtol: float = 4 * np.finfo(float).eps) -> float:
        if self.f_lo == 0:
            return self.lo
        if self.f_hi == 0:
            return self.hi
        return optimize.bisect(f, self.lo, self.hi, xtol=self.tolerance, rtol=rtol, maxiter=500)


def expand_bracket(f: Callable[[float], float], lo: float, hi: float, limit: float,
                   tolerance: float, factor: float = 2.0) -> RootBracket:
    """Grow ``[lo, hi]`` geometrically until ``f`` changes sign."""
    f_lo = f(lo)
    while True:
        f_hi = f(hi)
        if np.sign(f_lo) * np.sign(f_hi) <= 0:
            return RootBracket(lo, hi, f_lo, f_hi, tolerance)
        if hi >= limit:
            raise RootNotFound(f"no sign change in [{lo:g}, {limit:g}]")
        lo, f_lo = hi, f_hi
        hi = min(hi * factor, limit)


def bte_pairwise_closed_form(state: ThermalState) -> float:
    """Birth time of entanglement of the pairwise pattern, independent of ``n``."""
    S0 = state.S0
    if S0 <= 0:
        return 0.0
    return 0.5 * math.asinh(2 * math.sqrt(S0) / (state.N10 + state.N20 + 1))


def entanglement_margin(config: ModelConfig, tau: float, state: ThermalState | None = None) -> float:
    """``-S(tau)``: positive exactly when the collective modes are entangled."""
    cm = collective_cm(config, tau, state)
    return -s_criterion(cm, state if state is not None else thermal_state(config)).S


def bte_numeric(config: ModelConfig, state: ThermalState | None = None,
                tol: float = 1e-10, tau_max: float = TAU_MAX) -> float:
    """Smallest ``tau`` at which the separability criterion first fails."""
    state = state if state is not None else thermal_state(config)
    if config.theta == 0 or state.S0 == 0:
        return 0.0

    def f(tau):
        return entanglement_margin(config, tau, state)

    try:
        bracket = expand_bracket(f, 0.0, 1.0, tau_max, tol)
    except RootNotFound:
        raise RootNotFound(f"no entanglement for tau <= {tau_max:g}") from None
    root = bracket.solve(f)
    if root < 1e3 * tol:
        # cold states are born almost at once; resolve the root relatively
        hi = root + tol
        bracket = RootBracket(0.0, hi, f(0.0), f(hi), tolerance=1e-300)
        root = bracket.solve(f, rtol=1e-10)
    return root


def negativity(config: ModelConfig, tau: float, state: ThermalState | None = None) -> float:
    return log_negativity(collective_cm(config, tau, state), config.log_base)


def critical_temperature(config: ModelConfig, tau_i: float, ceiling: float = THETA_CEILING,
                         rtol: float = 1e-8) -> float:
    """Temperature above which the collective modes are separable at ``tau_i``."""
    vac = config.replace(theta=0.0)
    if negativity(vac, tau_i) <= 0:
        raise ConfigError(f"no entanglement at theta = 0 for tau = {tau_i}")

    def g(theta):
        return -entanglement_margin(config.replace(theta=theta), tau_i)

    g_hi = g(ceiling)
    if g_hi < 0:
        raise RootNotFound(f"no critical temperature found below ceiling {ceiling:g}")
    # vacuum end is entangled by the precondition
    bracket = RootBracket(0.0, ceiling, -1.0, g_hi, tolerance=1e-300)
    return bracket.solve(g, rtol=rtol)


def scan_negativity_vs_n(config: ModelConfig, tau_i: float, n_list: Sequence[int]) -> ScanResult:
    n_list = odd_sizes(n_list)
    if not n_list:
        raise ConfigError("n_list must be nonempty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ConfigError("n_list must be ascending")
    values = [negativity(config.replace(n=n), tau_i) for n in n_list]
    return ScanResult("negativity_vs_n", {"n": n_list, "EN": values},
                      {"config": config.as_dict(), "tau": tau_i})


def fit_slope(scan: ScanResult, y: str | None = None, mask=None) -> tuple:
    """Least-squares line through ``(abscissa, y)``.

    Returns ``(slope, intercept, residual)`` with ``residual`` the largest
    absolute deviation from the fitted line.
    """
    x = scan.abscissa
    yv = scan[y if y is not None else scan.names[1]]
    if mask is not None:
        x, yv = x[mask], yv[mask]
    if len(x) < 2:
        raise ValueError("need at least two points to fit a line")
    A = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(A, yv, rcond=None)
    residual = float(np.max(np.abs(yv - (slope * x + intercept))))
    return float(slope), float(intercept), residual


def _theta_label(theta: float) -> str:
    return f"{theta:g}".replace(".", "p")


def figure_series(config: ModelConfig, figure_id: int, tau: float | None = None,
                  theta: float | None = None) -> ScanResult:
    """Data behind one of the standard figures.

    ``tau`` overrides the interaction time of figures 5 and 6, ``theta`` the
    thermal temperature of figure 5. Figure 6 is computed for ``config.n``.
    """
    d = FIGURE_DEFAULTS
    meta = {"config": config.as_dict(), "figure": figure_id}
    if figure_id == 2:
        pw = config.replace(pattern=Pattern.PAIRWISE)
        thetas = np.array(d["theta_grid"])
        tau_e = [bte_pairwise_closed_form(thermal_state(pw.replace(theta=t))) for t in thetas]
        return ScanResult("fig2", {"theta": thetas, "tau_E": tau_e}, meta)
    if figure_id == 3:
        oa = config.replace(pattern=Pattern.ONE_TO_ALL)
        thetas = np.array(d["theta_grid"])
        cols = {"theta": thetas}
        for n in d["fig3_n"]:
            cols[f"tau_E_n{n}"] = [bte_numeric(oa.replace(n=n, theta=t)) for t in thetas]
        return ScanResult("fig3", cols, meta)
    if figure_id == 4:
        oa = config.replace(pattern=Pattern.ONE_TO_ALL)
        ns = d["n_values"]
        cols = {"n": ns}
        for t in d["fig4_theta"]:
            cols[f"tau_E_theta{_theta_label(t)}"] = [bte_numeric(oa.replace(n=n, theta=t)) for n in ns]
        return ScanResult("fig4", cols, meta)
    if figure_id == 5:
        oa = config.replace(pattern=Pattern.ONE_TO_ALL)
        tau_i = d["fig5_tau"] if tau is None else tau
        hot = d["fig5_theta"] if theta is None else theta
        ns = d["n_values"]
        vac = scan_negativity_vs_n(oa.replace(theta=0.0), tau_i, ns)
        thermal = scan_negativity_vs_n(oa.replace(theta=hot), tau_i, ns)
        meta.update(tau=tau_i, theta_thermal=hot)
        return ScanResult("fig5", {"n": ns, "EN_vacuum": vac["EN"], "EN_thermal": thermal["EN"]}, meta)
    if figure_id == 6:
        oa = config.replace(pattern=Pattern.ONE_TO_ALL)
        tau_i = d["fig6_tau"] if tau is None else tau
        thetas = np.array(d["fig6_theta_grid"])
        values = [negativity(oa.replace(theta=t), tau_i) for t in thetas]
        meta.update(tau=tau_i)
        return ScanResult("fig6", {"theta": thetas, "EN": values}, meta)
    raise ConfigError(f"unknown figure id {figure_id!r}; expected one of 2..6")
