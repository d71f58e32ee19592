import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mpdc_collective.analysis import ScanResult
from mpdc_collective.output import (EmptyScan, complex_matrix_to_csv, format_float, matrix_to_csv,
                                    read_csv, scan_to_csv, scan_to_json, scan_to_svg)

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(st.lists(finite, min_size=1, max_size=20))
def test_csv_round_trip_exact(values):
    scan = ScanResult("t", {"i": np.arange(len(values)), "v": values})
    back = read_csv(scan_to_csv(scan))
    np.testing.assert_array_equal(back["v"], np.asarray(values))


@given(finite)
def test_format_float_round_trip(x):
    assert float(format_float(x)) == x


def test_header_and_line_endings():
    text = scan_to_csv(ScanResult("fig2", {"theta": [1.0, 2.0], "tau_E": [0.1, 0.2]}))
    assert text.startswith("theta,tau_E\n")
    assert "\r" not in text


def test_read_csv_accepts_stream_and_path(tmp_path):
    text = "a,b\n1,2\n3,4\n"
    path = tmp_path / "x.csv"
    path.write_text(text)
    for src in (text, io.StringIO(text), path):
        cols = read_csv(src)
        assert cols["b"].tolist() == [2.0, 4.0]


def test_complex_matrix_csv():
    m = np.array([[1 + 2j, 3 - 4j]])
    cols = read_csv(complex_matrix_to_csv(m))
    assert list(cols) == ["re_1", "im_1", "re_2", "im_2"]
    assert [cols[k][0] for k in cols] == [1.0, 2.0, 3.0, -4.0]
    assert matrix_to_csv(np.eye(2), "s").splitlines()[0] == "s1,s2"


def test_json_payload():
    import json
    scan = ScanResult("s", {"n": [1, 3], "EN": [0.5, 1.5]}, {"tau": 0.3})
    data = json.loads(scan_to_json(scan))
    assert data["columns"]["EN"] == [0.5, 1.5]
    assert data["metadata"]["tau"] == 0.3


@pytest.mark.parametrize("emit", [scan_to_csv, scan_to_json, scan_to_svg])
def test_empty_scan_rejected(emit):
    with pytest.raises(EmptyScan):
        emit(ScanResult("empty", {"n": [], "EN": []}))


def test_svg_deterministic_and_escaped():
    scan = ScanResult("a<b & c", {"x": [1, 2, 3], "y1": [0, 1, 4], "y2": [1, 1, np.nan]})
    one, two = scan_to_svg(scan), scan_to_svg(scan)
    assert one == two
    assert 'viewBox="0 0 800 600"' in one
    assert "a&lt;b &amp; c" in one
    assert one.count("<polyline") == 2
    assert one.count('text-anchor="middle">') <= 1 + 12 + 1


def test_svg_tick_cap():
    scan = ScanResult("wide", {"x": np.linspace(0, 1e6, 50), "y": np.linspace(-3, 3, 50)})
    svg = scan_to_svg(scan)
    # 12 labels per axis at most
    assert svg.count('text-anchor="end"') <= 12
