"""
Micro-mode propagators
======================

R(tau) maps the initial operators (a_k, b_l^dagger) onto their values at
time tau. Rows 0..n-1 belong to the signal, rows n..2n-1 to the idler.
"""

import numpy as np

from mpdc_collective import ModelConfig, collective_coefficients, propagator
from mpdc_collective.dynamics import bogoliubov_sums
from mpdc_collective.oracle import oracle_propagator

# %%
# A single pair reduces to the textbook cosh/sinh squeezer.
r = propagator(ModelConfig(pattern="pairwise"), 1.0).r
print("|r11|, |r12| =", abs(r[0, 0]), abs(r[0, 1]))

# %%
# The one-to-all propagator comes from a matrix exponential. An RK4
# integration of the same linear system is an independent check.
cfg = ModelConfig().replace(n=7)
R = propagator(cfg, 0.5).r
R_rk4 = oracle_propagator(cfg, 0.5, method="rk4").r
print("max |R - R_rk4| =", np.max(np.abs(R - R_rk4)))

# %%
# Canonical commutators survive: rows sum to +1 (signal) and -1 (idler).
print("Bogoliubov sums:", np.round(bogoliubov_sums(propagator(cfg, 0.5)), 12))

# %%
# The collective amplitude A = sum_k a_k / sqrt(n) grows like cosh(n tau)
# once all modes are degenerate.
flat = ModelConfig(bw1=0.0, bw2=0.0).replace(n=7)
c = collective_coefficients(propagator(flat, 0.2))
print("|sum m_j| / sqrt(n) =", abs(c.m.sum()) / np.sqrt(7), " cosh(1.4) =", np.cosh(1.4))
