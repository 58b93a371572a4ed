"""Report assembly and emission: CSV tables, one JSON document, SVG charts.

Rendering is lossless and deterministic: integers print verbatim, floats
with 17 significant digits (enough to round-trip float64), and every file
is written atomically (temp file + rename) so readers never see a partial
artifact.  Two runs with the same config produce byte-identical files,
the timestamp metadata field aside.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .constants import ClaimReport

#: Header of the correlation-table schema.
CORRELATION_HEADER = ("kind", "x", "shift", "value", "terms")

#: Header of the claim-table schema.
CLAIM_HEADER = ("claim", "x", "computed", "bound", "constant", "verdict")

#: Header of the overlap-table schema.
MINOVERLAP_HEADER = ("n", "method", "M", "witness", "bound", "bound_value", "ok")

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass(frozen=True)
class ResultTable:
    """A named rectangular result set, ready for CSV emission."""

    name: str
    header: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError(
                    f"table {self.name}: row width {len(row)} != "
                    f"header width {len(self.header)}"
                )


@dataclass(frozen=True)
class ReportBundle:
    """Everything one run emits: metadata, result tables, claim reports."""

    meta: dict
    tables: tuple[ResultTable, ...]
    claims: tuple[ClaimReport, ...]


def make_meta(version: str, config_digest: str) -> dict:
    """Bundle metadata; the timestamp is the only run-varying field."""
    return {
        "artifact": "corrlab",
        "version": version,
        "config_digest": config_digest,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }


def format_cell(v) -> str:
    """Render one CSV cell: ints verbatim, floats at 17 significant digits."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return format_cell(float(v))
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return f"{v:.17g}"
    return str(v)


def parse_cell(text: str):
    """Inverse of :func:`format_cell` for round-trip checks."""
    if text == "":
        return None
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def atomic_write(path: str | Path, data: str | bytes) -> None:
    """Write a file via temp-then-rename so readers never see partial data."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = data.encode() if isinstance(data, str) else data
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Render rows to CSV text (cells contain no quoting-worthy characters)."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(path: str | Path, table: ResultTable) -> None:
    atomic_write(path, render_csv(table.header, table.rows))


def read_csv(path: str | Path, name: str = "") -> ResultTable:
    """Parse a CSV written by :func:`write_csv` back into a ResultTable."""
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln != ""]
    header = tuple(lines[0].split(","))
    rows = tuple(tuple(parse_cell(c) for c in ln.split(",")) for ln in lines[1:])
    return ResultTable(name=name or Path(path).stem, header=header, rows=rows)


def _claim_to_jsonable(claim: ClaimReport) -> dict:
    return {
        "claim": claim.claim,
        "grid": list(claim.grid),
        "computed": list(claim.computed),
        "bound": [None if math.isnan(b) else b for b in claim.bound],
        "constant": list(claim.constant),
        "verdicts": list(claim.verdicts),
        "notes": claim.notes,
    }


def bundle_to_jsonable(bundle: ReportBundle) -> dict:
    return {
        "meta": bundle.meta,
        "tables": {
            t.name: {
                "header": list(t.header),
                "rows": [
                    [float(c) if isinstance(c, Fraction) else c for c in row]
                    for row in t.rows
                ],
            }
            for t in bundle.tables
        },
        "claims": [_claim_to_jsonable(c) for c in bundle.claims],
    }


def render_json(bundle: ReportBundle) -> str:
    return json.dumps(bundle_to_jsonable(bundle), indent=2, sort_keys=True) + "\n"


def write_json(path: str | Path, bundle: ReportBundle) -> None:
    atomic_write(path, render_json(bundle))


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def render_line_chart(
    title: str,
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    *,
    log_x: bool = False,
    log_y: bool = False,
    width: int = 800,
    height: int = 500,
) -> str:
    """A standalone SVG 1.1 document with one polyline per series.

    Log axes apply only when every coordinate on that axis is positive;
    otherwise the axis silently stays linear, which keeps the renderer
    total on arbitrary data.
    """
    margin = 64.0
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin

    def tx(vals, want_log):
        vals = [float(v) for v in vals]
        if want_log and all(v > 0 for v in vals):
            return [math.log10(v) for v in vals], True
        return vals, False

    xs_all, ys_all = [], []
    txd = []
    for label, xs, ys in series:
        if len(xs) != len(ys):
            raise ValueError(f"series {label!r}: x/y length mismatch")
        txd.append((label, list(xs), list(ys)))
        xs_all.extend(xs)
        ys_all.extend(ys)
    finite_y = [y for y in ys_all if math.isfinite(y)]
    finite_x = [x for x in xs_all if math.isfinite(x)]
    if not finite_x or not finite_y:
        finite_x, finite_y = [0.0, 1.0], [0.0, 1.0]

    lx_vals, x_logged = tx(finite_x, log_x)
    ly_vals, y_logged = tx(finite_y, log_y)
    x_lo, x_hi = min(lx_vals), max(lx_vals)
    y_lo, y_hi = min(ly_vals), max(ly_vals)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0

    def px(v: float) -> float:
        v = math.log10(v) if x_logged else v
        return margin + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v: float) -> float:
        v = math.log10(v) if y_logged else v
        return height - margin - (v - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="28" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="#333" stroke-width="1"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="#333" stroke-width="1"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        x = margin + (t - x_lo) / (x_hi - x_lo) * plot_w
        label = 10.0**t if x_logged else t
        parts.append(
            f'<line x1="{x:.2f}" y1="{height - margin}" x2="{x:.2f}" '
            f'y2="{height - margin + 5}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{height - margin + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{label:.6g}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        y = height - margin - (t - y_lo) / (y_hi - y_lo) * plot_h
        label = 10.0**t if y_logged else t
        parts.append(
            f'<line x1="{margin - 5}" y1="{y:.2f}" x2="{margin}" '
            f'y2="{y:.2f}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{margin - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{label:.6g}</text>'
        )
    for i, (label, xs, ys) in enumerate(txd):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(
            f"{px(x):.2f},{py(y):.2f}"
            for x, y in zip(xs, ys)
            if math.isfinite(float(x)) and math.isfinite(float(y))
        )
        if pts:
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" '
                f'stroke-width="1.8"/>'
            )
        ly = margin + 16 * i
        parts.append(
            f'<rect x="{width - margin - 150}" y="{ly - 9}" width="12" '
            f'height="3" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{width - margin - 132}" y="{ly - 4}" '
            f'font-family="sans-serif" font-size="11">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(path: str | Path, svg_text: str) -> None:
    atomic_write(path, svg_text)
