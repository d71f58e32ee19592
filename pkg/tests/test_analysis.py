import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mpdc_collective.analysis import (FIGURE_DEFAULTS, THETA_PER_KELVIN, RootBracket, ScanResult,
                                      bte_numeric, bte_pairwise_closed_form, critical_temperature,
                                      expand_bracket, figure_series, fit_slope, negativity,
                                      scan_negativity_vs_n)
from mpdc_collective.errors import ConfigError, RootNotFound
from mpdc_collective.gaussian import ThermalState, thermal_state
from mpdc_collective.model import ModelConfig

HALF_LN3 = 0.5493061443340548  # asinh(4/3) / 2


def _config(pattern="one-to-all", n=1, **kw):
    return ModelConfig(pattern=pattern, **kw).replace(n=n)


def test_scan_result_validation():
    with pytest.raises(ValueError, match="unequal"):
        ScanResult("x", {"a": [1, 2], "b": [1]})
    with pytest.raises(ValueError, match="increasing"):
        ScanResult("x", {"a": [2, 1], "b": [1, 1]})
    s = ScanResult("x", {"a": [1, 2], "b": [3, 4]})
    assert s.names == ["a", "b"] and len(s) == 2
    assert s["b"].dtype == float


def test_root_bracket():
    with pytest.raises(ValueError):
        RootBracket(0.0, 1.0, 1.0, 2.0, 1e-12)
    b = expand_bracket(lambda x: x - 5.0, 0.0, 1.0, 64.0, 1e-12)
    assert (b.lo, b.hi) == (4.0, 8.0)
    assert b.solve(lambda x: x - 5.0) == pytest.approx(5.0, abs=1e-12)
    with pytest.raises(RootNotFound):
        expand_bracket(lambda x: x + 1.0, 0.0, 1.0, 64.0, 1e-12)


def test_closed_form_bte_reference():
    # N10 = N20 = 1 gives S0 = 4 and tau_E = asinh(4/3) / 2
    state = ThermalState(np.array([1.0]), np.array([1.0]))
    assert bte_pairwise_closed_form(state) == pytest.approx(HALF_LN3, rel=1e-15)
    assert bte_pairwise_closed_form(ThermalState.vacuum(3)) == 0.0


@pytest.mark.parametrize("pattern", ["pairwise", "one-to-all"])
def test_vacuum_bte_is_zero(pattern):
    assert bte_numeric(_config(pattern, n=5)) == 0.0


@pytest.mark.parametrize("theta", [10.0, 30.0, 100.0, 300.0, 1000.0])
def test_bte_numeric_matches_closed_form(theta):
    cfg = _config("pairwise", n=3, theta=theta)
    expected = bte_pairwise_closed_form(thermal_state(cfg))
    assert bte_numeric(cfg) == pytest.approx(expected, abs=1e-8, rel=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 5.0), st.floats(0.05, 5.0))
def test_bte_closed_form_is_the_zero_of_S(n1, n2):
    from mpdc_collective.gaussian import cm_pairwise, s_criterion
    state = ThermalState(np.array([n1]), np.array([n2]))
    tau_e = bte_pairwise_closed_form(state)
    crit = s_criterion(cm_pairwise(state, tau_e, 600.0), state)
    assert abs(crit.S) <= 1e-9 * max(1.0, state.S0)


def test_bte_no_entanglement_window():
    with pytest.raises(RootNotFound):
        bte_numeric(_config("pairwise", theta=1e5), tau_max=1e-3)


def test_negativity_pairwise_vacuum():
    assert negativity(_config("pairwise", n=7), 0.3) == pytest.approx(0.6, rel=1e-12)


def test_critical_temperature_brackets_zero():
    cfg = _config(n=1)
    tc = critical_temperature(cfg, 0.6978)
    assert negativity(cfg.replace(theta=tc * 0.999), 0.6978) > 0
    assert negativity(cfg.replace(theta=tc * 1.001), 0.6978) == 0


def test_critical_temperature_errors():
    with pytest.raises(ConfigError):
        critical_temperature(_config(), 0.0)
    with pytest.raises(RootNotFound, match="ceiling"):
        critical_temperature(_config(n=5), 0.6978, ceiling=1e3)


def test_kelvin_calibration_reproduces_reference_point():
    tc = critical_temperature(_config(n=1), FIGURE_DEFAULTS["fig6_tau"])
    assert tc / THETA_PER_KELVIN == pytest.approx(4.38, rel=1e-5)


def test_scan_negativity_vs_n_and_fit():
    scan = scan_negativity_vs_n(_config(), 0.3324, [1, 3, 5])
    assert scan.names == ["n", "EN"]
    slope, intercept, resid = fit_slope(scan)
    assert slope == pytest.approx(0.6648, rel=0.01)
    assert resid < 1e-3
    with pytest.raises(ConfigError):
        scan_negativity_vs_n(_config(), 0.3, [3, 1])
    with pytest.raises(ConfigError):
        scan_negativity_vs_n(_config(), 0.3, [2])


def test_fit_slope_exact_line_and_mask():
    s = ScanResult("l", {"x": [0, 1, 2, 3], "y": [1, 3, 5, 100]})
    slope, intercept, resid = fit_slope(s, mask=np.array([True, True, True, False]))
    assert (slope, intercept) == pytest.approx((2.0, 1.0))
    assert resid < 1e-12
    with pytest.raises(ValueError):
        fit_slope(s, mask=np.array([True, False, False, False]))


@pytest.mark.parametrize("fig, columns", [
    (2, ["theta", "tau_E"]),
    (3, ["theta"] + [f"tau_E_n{n}" for n in (3, 5, 7, 9, 11)]),
    (4, ["n", "tau_E_theta30", "tau_E_theta300", "tau_E_theta3000"]),
    (5, ["n", "EN_vacuum", "EN_thermal"]),
    (6, ["theta", "EN"]),
])
def test_figure_schemas(fig, columns):
    scan = figure_series(ModelConfig(), fig)
    assert scan.names == columns
    assert np.all(np.isfinite(np.column_stack([scan[c] for c in columns])))


def test_unknown_figure():
    with pytest.raises(ConfigError):
        figure_series(ModelConfig(), 7)


def test_pairwise_bte_independent_of_n():
    # degenerate modes keep N10, N20 fixed as n grows
    vals = [bte_numeric(_config("pairwise", n=n, theta=300.0, bw1=0.0, bw2=0.0), tol=1e-13)
            for n in (1, 5, 11)]
    assert max(vals) - min(vals) < 1e-10
    assert math.isfinite(vals[0])


def test_pairwise_bandwidth_shifts_occupation_only():
    # finite bandwidth changes the averaged occupation, hence tiny n dependence
    vals = [bte_numeric(_config("pairwise", n=n, theta=300.0)) for n in (1, 5, 11)]
    assert max(vals) - min(vals) < 1e-8
