"""Collective entanglement between multimode parametric down-conversion wave-packets.

The signal and idler wave-packets each hold ``n = 2m + 1`` micro-modes coupled
either pairwise (energy-conserving partners only) or one-to-all. The package
propagates the micro-modes, projects onto the collective Fourier-sum
amplitudes, and quantifies their entanglement with the logarithmic negativity.
"""

from .analysis import (ScanResult, bte_numeric, bte_pairwise_closed_form, critical_temperature,
                       figure_series, fit_slope, negativity, scan_negativity_vs_n)
from .dynamics import (Propagator, collective_coefficients, matrix_exponential,
                       one_to_all_propagator, pairwise_propagator, propagator)
from .errors import ConfigError, NumericalFailure, RootNotFound
from .gaussian import (CollectiveCM, ThermalState, cm_one_to_all, cm_pairwise, collective_cm,
                       invariants, log_negativity, s_criterion, thermal_occupation, thermal_state)
from .model import (LogBase, ModelConfig, Pattern, build_graph, build_grid, is_connected,
                    vertex_degree)

__version__ = "0.1.0"

__all__ = [
    "ModelConfig", "Pattern", "LogBase", "build_grid", "build_graph", "vertex_degree",
    "is_connected", "Propagator", "propagator", "pairwise_propagator", "one_to_all_propagator",
    "matrix_exponential", "collective_coefficients", "ThermalState", "thermal_occupation",
    "thermal_state", "CollectiveCM", "cm_pairwise", "cm_one_to_all", "collective_cm",
    "invariants", "s_criterion", "log_negativity", "ScanResult", "bte_numeric",
    "bte_pairwise_closed_form", "critical_temperature", "negativity", "scan_negativity_vs_n",
    "fit_slope", "figure_series", "ConfigError", "NumericalFailure", "RootNotFound",
]
