"""
Figure data and the Kelvin scale
================================

Each figure series is a plain table that can be written as CSV, JSON or SVG.
Temperatures are dimensionless, theta = k_B T / (hbar w). Converting to
kelvin needs the coupling w, and THETA_PER_KELVIN is the calibration
used here.
"""

from pathlib import Path

from mpdc_collective import ModelConfig, critical_temperature, figure_series, fit_slope
from mpdc_collective.analysis import THETA_PER_KELVIN
from mpdc_collective.model import kelvin_to_theta
from mpdc_collective.output import scan_to_csv, scan_to_svg

out = Path("demo_output")
out.mkdir(exist_ok=True)

# %%
# Negativity grows linearly with n. In bits the slope is close to 2 tau / ln 2.
fig5 = figure_series(ModelConfig(log_base="2"), 5)
print(scan_to_csv(fig5))
slope, intercept, resid = fit_slope(fig5, "EN_vacuum")
print(f"vacuum slope {slope:.4f} bits per mode")
(out / "fig5.svg").write_text(scan_to_svg(fig5, "E_N versus n"))

# %%
# Critical temperatures rise steeply with n.
for n in (1, 3, 5):
    tc = critical_temperature(ModelConfig().replace(n=n), 0.6978)
    print(f"n={n}  theta_c={tc:12.2f}  ~ {tc / THETA_PER_KELVIN:8.2f} K")

# %%
# The calibration corresponds to a coupling of about 9.67e8 rad/s.
w = 9.67e8
print("theta for 1 K at w = 9.67e8 rad/s:", kelvin_to_theta(1.0, w))
