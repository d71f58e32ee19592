"""CSV, JSON and SVG writers for scan tables and matrices.

All text output is UTF-8 with LF line endings. Floats are written with 17
significant digits so a CSV round trip is exact.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from .analysis import ScanResult

__all__ = ["format_float", "write_csv", "read_csv", "scan_to_csv", "scan_to_json",
           "scan_to_svg", "matrix_to_csv", "complex_matrix_to_csv", "EmptyScan"]


class EmptyScan(ValueError):
    """Raised when asked to emit a table with no rows."""


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(header: Sequence[str], rows, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, (float, np.floating)) else v
                         for v in row])


def read_csv(source) -> dict:
    """Parse CSV text, a path or a stream into ``{header: float array}``."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source):
        text = Path(source).read_text(encoding="utf-8")
    elif hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows = [[float(v) for v in row] for row in reader if row]
    return {name: np.array([r[i] for r in rows]) for i, name in enumerate(header)}


def _require_rows(scan: ScanResult):
    if len(scan) == 0:
        raise EmptyScan(f"scan {scan.label!r} has no rows")


def scan_to_csv(scan: ScanResult) -> str:
    _require_rows(scan)
    out = io.StringIO()
    write_csv(scan.names, zip(*(scan[c] for c in scan.names)), out)
    return out.getvalue()


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def scan_to_json(scan: ScanResult) -> str:
    _require_rows(scan)
    payload = {"label": scan.label, "columns": _jsonable(scan.columns),
               "metadata": _jsonable(scan.metadata)}
    return json.dumps(payload, indent=2) + "\n"


def matrix_to_csv(matrix: np.ndarray, prefix: str = "c") -> str:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    out = io.StringIO()
    write_csv([f"{prefix}{j + 1}" for j in range(matrix.shape[1])],
              ([float(v) for v in row] for row in matrix), out)
    return out.getvalue()


def complex_matrix_to_csv(matrix: np.ndarray) -> str:
    """One CSV row per matrix row as interleaved ``re_j, im_j`` columns."""
    matrix = np.asarray(matrix, dtype=complex)
    header = [f"{part}_{j + 1}" for j in range(matrix.shape[1]) for part in ("re", "im")]
    rows = ([float(v) for z in row for v in (z.real, z.imag)] for row in matrix)
    out = io.StringIO()
    write_csv(header, rows, out)
    return out.getvalue()


# --- SVG -----------------------------------------------------------------

_WIDTH, _HEIGHT = 800, 600
_MARGIN = dict(left=90, right=170, top=50, bottom=70)
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_MAX_TICKS = 12


def _nice_ticks(lo: float, hi: float, max_ticks: int = 6) -> list:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(1, max_ticks - 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step and len(ticks) < _MAX_TICKS:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt_tick(t: float) -> str:
    return f"{t:.4g}"


def scan_to_svg(scan: ScanResult, title: str | None = None) -> str:
    """Line chart with one polyline per ordinate column.

    Output is a pure function of the table, so identical input gives
    byte-identical SVG.
    """
    _require_rows(scan)
    x = scan.abscissa
    ys = {name: scan[name] for name in scan.names[1:]}
    finite = np.concatenate([v[np.isfinite(v)] for v in ys.values()] or [np.zeros(1)])
    y_lo, y_hi = float(min(finite.min(), 0.0)), float(finite.max())
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    x_lo, x_hi = float(x.min()), float(x.max())
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0
    left, right, top, bottom = (_MARGIN[k] for k in ("left", "right", "top", "bottom"))
    pw, ph = _WIDTH - left - right, _HEIGHT - top - bottom

    def sx(v):
        return left + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(v):
        return top + ph - (v - y_lo) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH} {_HEIGHT}" '
        f'width="{_WIDTH}" height="{_HEIGHT}" font-family="sans-serif" font-size="13">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="28" text-anchor="middle" font-size="16">'
        f'{_escape(title or scan.label)}</text>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    for t in _nice_ticks(x_lo, x_hi):
        px = sx(t)
        out.append(f'<line x1="{px:.2f}" y1="{top + ph}" x2="{px:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{top + ph + 20}" text-anchor="middle">{_fmt_tick(t)}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        py = sy(t)
        out.append(f'<line x1="{left - 5}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{py + 4:.2f}" text-anchor="end">{_fmt_tick(t)}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{_HEIGHT - 20}" text-anchor="middle">'
               f'{_escape(scan.names[0])}</text>')
    for i, (name, y) in enumerate(ys.items()):
        color = _COLORS[i % len(_COLORS)]
        ok = np.isfinite(y)
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x[ok], y[ok]))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}"/>')
        ly = top + 20 + 22 * i
        out.append(f'<line x1="{left + pw + 15}" y1="{ly}" x2="{left + pw + 40}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 46}" y="{ly + 4}">{_escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return (str(text).replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))
