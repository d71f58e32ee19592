import subprocess
import sys
import time

import numpy as np
import pytest

from mpdc_collective.cli import main
from mpdc_collective.output import read_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_odd_n_diagnostic(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--n", "4"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert "--n" in err and "n must be odd" in err and len(err.strip().splitlines()) == 1


def test_subcommand_odd_n(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bte", "--n", "4"])
    assert exc.value.code == 2


def test_missing_fig_id(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fig"])
    assert exc.value.code == 2
    assert "--fig-id" in capsys.readouterr().err


def test_vacuum_bte(capsys):
    code, out, _ = run(capsys, "bte", "--pattern", "pairwise", "--theta", "0")
    assert code == 0
    assert read_csv(out)["tau_E"].tolist() == [0.0]


@pytest.mark.parametrize("argv, columns", [
    (["negativity", "--n", "3"], ["tau", "EN"]),
    (["bte", "--n", "3", "--theta", "30"], ["theta", "tau_E"]),
    (["tcrit", "--n", "1"], ["tau", "theta_c"]),
    (["scan-n", "--n-list", "1,3,5"], ["n", "EN"]),
    (["fig", "--fig-id", "2"], ["theta", "tau_E"]),
    (["oracle", "--n", "3", "--theta", "30"], ["tau", "max_abs_diff", "max_abs_entry"]),
])
def test_csv_round_trip(capsys, tmp_path, argv, columns):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    cols = read_csv(out)
    assert list(cols) == columns
    path = tmp_path / "o.csv"
    assert main(argv + ["--out", str(path)]) == 0
    assert path.read_text() == out
    again = read_csv(path)
    for k in cols:
        np.testing.assert_array_equal(cols[k], again[k])


def test_cm_dump(capsys):
    code, out, _ = run(capsys, "cm", "--n", "3", "--theta", "30", "--tau", "0.4")
    assert code == 0
    cols = read_csv(out)
    for key in ("s11", "s44", "det_alpha", "det_beta", "det_gamma", "I1", "I2", "S", "S0", "EN"):
        assert key in cols
    assert cols["S"][0] < 0 and cols["EN"][0] > 0
    code, js, _ = run(capsys, "cm", "--format", "json")
    assert code == 0 and '"det_gamma"' in js


def test_propagator_dump(capsys):
    code, out, _ = run(capsys, "propagator", "--n", "3", "--tau", "0.5")
    assert code == 0
    cols = read_csv(out)
    assert len(cols) == 12 and len(cols["re_1"]) == 6


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("pattern = pairwise\nn = 5\ntau = 0.25\n")
    code, out, _ = run(capsys, "negativity", "--config", str(cfg))
    assert code == 0
    assert read_csv(out)["EN"][0] == pytest.approx(0.5, rel=1e-12)
    code, out, _ = run(capsys, "negativity", "--config", str(cfg), "--tau", "0.3")
    assert read_csv(out)["EN"][0] == pytest.approx(0.6, rel=1e-12)


def test_missing_config_file(capsys, tmp_path):
    code, _, err = run(capsys, "cm", "--config", str(tmp_path / "nope.cfg"))
    assert code == 2 and "--config" in err


def test_kelvin_flags(capsys):
    code, out, _ = run(capsys, "bte", "--temp-kelvin", "30", "--coupling-hz", "1e9")
    assert code == 0 and read_csv(out)["theta"][0] > 0
    code, _, err = run(capsys, "bte", "--temp-kelvin", "30")
    assert code == 2 and "--coupling-hz" in err


def test_svg_only_for_scans(capsys):
    code, _, err = run(capsys, "cm", "--format", "svg")
    assert code == 2 and "svg" in err
    code, a, _ = run(capsys, "fig", "--fig-id", "5", "--format", "svg")
    code2, b, _ = run(capsys, "fig", "--fig-id", "5", "--format", "svg")
    assert code == code2 == 0 and a == b and a.startswith("<?xml")


def test_empty_scan_exit_3(capsys):
    code, _, err = run(capsys, "scan-n", "--n-list", ",")
    assert code == 3 and "no rows" in err


def test_unwritable_output_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "negativity", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 3 and "cannot write" in err


def test_numerical_failure_exit_4(capsys):
    code, _, err = run(capsys, "tcrit", "--n", "11", "--tau", "3")
    assert code == 4 and "ill-conditioned" in err
    code, _, err = run(capsys, "tcrit", "--n", "7", "--tau", "0.6978")
    assert code == 4 and "ceiling" in err


def test_no_entanglement_is_config_error(capsys):
    code, _, err = run(capsys, "tcrit", "--tau", "0")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mpdc_collective", "negativity", "--pattern",
                           "pairwise", "--tau", "0.5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert read_csv(proc.stdout)["EN"][0] == pytest.approx(1.0, rel=1e-12)


def test_all_figures_under_a_minute(tmp_path):
    start = time.perf_counter()
    for fig in range(2, 7):
        assert main(["fig", "--fig-id", str(fig), "--out", str(tmp_path / f"fig{fig}.csv")]) == 0
    assert time.perf_counter() - start < 60
