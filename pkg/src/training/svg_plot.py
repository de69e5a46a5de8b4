"""
Text SVG line chart of one metrics column against step.

One <polyline> per rule, a legend and min/max labels on both axes. Output
depends only on the input rows, so the same CSV always gives the same bytes.
"""
import math
from pathlib import Path
from typing import List, Sequence, Tuple, Union
from xml.sax.saxutils import escape

import pandas as pd

from src.constants import SVG_DEFAULT_COLUMN, SVG_HEIGHT, SVG_MARGIN, SVG_PALETTE, SVG_WIDTH
from src.models.exceptions import ConfigError
from src.training.metrics_writer import read_metrics_csv


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _label(value: float) -> str:
    return f"{value:.4g}"


def _series(frame: pd.DataFrame, column: str) -> List[Tuple[str, List[Tuple[float, float]]]]:
    """(rule, [(step, value), ...]) in order of first appearance; non-finite values dropped"""
    series = []
    for rule, group in frame.groupby('rule', sort=False):
        points = [
            (float(step), float(value))
            for step, value in zip(group['step'], group[column])
            if math.isfinite(float(value))
        ]
        series.append((str(rule), sorted(points)))
    return series


def _span(values: Sequence[float]) -> Tuple[float, float]:
    if not values:
        return 0.0, 1.0
    lo, hi = min(values), max(values)
    if lo == hi:
        return lo - 0.5, hi + 0.5
    return lo, hi


def render_svg(frame: pd.DataFrame, column: str = SVG_DEFAULT_COLUMN) -> str:
    """
    Render a metrics table as an SVG document.

    Args:
        frame: Metrics rows with at least step, rule and `column`
        column: Numeric column to plot

    Returns:
        SVG text

    Raises:
        ConfigError: if the table is empty or `column` is missing or not numeric
    """
    available = ", ".join(str(c) for c in frame.columns)
    if column not in frame.columns:
        raise ConfigError(f"Column '{column}' not found; available columns: {available}")
    for required in ('step', 'rule'):
        if required not in frame.columns:
            raise ConfigError(f"Metrics table has no '{required}' column; available columns: {available}")
    if frame.empty:
        raise ConfigError("Metrics table has no data rows")
    if not pd.api.types.is_numeric_dtype(frame[column]):
        raise ConfigError(f"Column '{column}' is not numeric")

    series = _series(frame, column)
    xs = [x for _, points in series for x, _ in points]
    ys = [y for _, points in series for _, y in points]
    x_lo, x_hi = _span(xs)
    y_lo, y_hi = _span(ys)

    left, top = SVG_MARGIN, SVG_MARGIN
    right, bottom = SVG_WIDTH - SVG_MARGIN, SVG_HEIGHT - SVG_MARGIN

    def sx(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * (right - left)

    def sy(y: float) -> float:
        return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>',
        f'<text x="{left}" y="{bottom + 20}" font-size="12" text-anchor="middle">{_label(x_lo)}</text>',
        f'<text x="{right}" y="{bottom + 20}" font-size="12" text-anchor="middle">{_label(x_hi)}</text>',
        f'<text x="{left - 8}" y="{bottom}" font-size="12" text-anchor="end">{_label(y_lo)}</text>',
        f'<text x="{left - 8}" y="{top + 4}" font-size="12" text-anchor="end">{_label(y_hi)}</text>',
        f'<text x="{(left + right) // 2}" y="{SVG_HEIGHT - 15}" font-size="12" text-anchor="middle">step</text>',
        f'<text x="{(left + right) // 2}" y="{top - 25}" font-size="14" text-anchor="middle">'
        f'{escape(column)}</text>',
    ]

    for i, (rule, points) in enumerate(series):
        color = SVG_PALETTE[i % len(SVG_PALETTE)]
        coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in points)
        lines.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')

    for i, (rule, _) in enumerate(series):
        color = SVG_PALETTE[i % len(SVG_PALETTE)]
        y = top + 10 + 16 * i
        lines.append(f'<line x1="{right - 110}" y1="{y}" x2="{right - 90}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        lines.append(f'<text x="{right - 84}" y="{y + 4}" font-size="12">{escape(rule)}</text>')

    lines.append('</svg>')
    return "\n".join(lines) + "\n"


def plot_files(paths: Sequence[Union[str, Path]], column: str = SVG_DEFAULT_COLUMN) -> str:
    """
    Render one chart from one or more metrics CSV files.

    Raises:
        ConfigError: if no file is given or the data cannot be plotted
        DataError: if a file is missing or unreadable
    """
    if not paths:
        raise ConfigError("At least one metrics file is required")
    frames = [read_metrics_csv(path) for path in paths]
    return render_svg(pd.concat(frames, ignore_index=True), column)
