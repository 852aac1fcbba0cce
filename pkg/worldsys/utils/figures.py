"""
Standalone SVG charts rendered from a jinja2 template, with optional PNG export
"""
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
from jinja2 import Environment, FileSystemLoader, select_autoescape
import logging

from worldsys.utils.file_handler import write_atomic
from worldsys.utils.responses import InputValidationError, error_response

logger = logging.getLogger(__name__)

TEMPLATES_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "templates")
PALETTE = ("#1f77b4", "#7f7f7f", "#d62728", "#2ca02c", "#9467bd")

_env = Environment(
    loader=FileSystemLoader(TEMPLATES_DIR),
    autoescape=select_autoescape(enabled_extensions=("svg", "j2"), default=True),
    keep_trailing_newline=True,
)


@dataclass
class ChartSeries:
    label: str
    x: Sequence[float]
    y: Sequence[float]
    kind: str = "points"  # points | line
    color: Optional[str] = None


def nice_ticks(lo: float, hi: float, count: int = 6) -> List[float]:
    """Round tick values covering [lo, hi]"""
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(count - 1, 1)
    magnitude = 10 ** math.floor(math.log10(raw))
    step = next(f * magnitude for f in (1, 2, 2.5, 5, 10) if f * magnitude >= raw)
    start = math.floor(lo / step) * step
    ticks = []
    value = start
    while value <= hi + step * 1e-9:
        if value >= lo - step * 1e-9:
            ticks.append(round(value, 10))
        value += step
    return ticks


def render_chart(
    path: os.PathLike,
    title: str,
    series: Sequence[ChartSeries],
    x_label: str = "",
    y_label: str = "",
    log_y: bool = False,
    note: str = "",
    width: int = 720,
    height: int = 480,
) -> Path:
    """Write an SVG scatter/line chart and return its path"""
    plot = {"left": 80.0, "right": width - 20.0, "top": 40.0, "bottom": height - 50.0}
    xs = np.concatenate([np.asarray(s.x, dtype=float) for s in series])
    ys = np.concatenate([np.asarray(s.y, dtype=float) for s in series])
    if log_y:
        ys = np.log10(ys[ys > 0])
    if xs.size == 0 or ys.size == 0:
        raise error_response(
            f"Nothing to plot in {title!r}" + (" on a log scale" if log_y else ""),
            InputValidationError,
            details={"path": str(path), "log_y": log_y}
        )
    x_ticks = nice_ticks(float(xs.min()), float(xs.max()))
    y_ticks = nice_ticks(float(ys.min()), float(ys.max()))
    x_lo, x_hi = min(x_ticks[0], xs.min()), max(x_ticks[-1], xs.max())
    y_lo, y_hi = min(y_ticks[0], ys.min()), max(y_ticks[-1], ys.max())

    def px(v):
        return plot["left"] + (v - x_lo) / (x_hi - x_lo or 1.0) * (plot["right"] - plot["left"])

    def py(v):
        if log_y:
            v = np.log10(v)
        return plot["bottom"] - (v - y_lo) / (y_hi - y_lo or 1.0) * (plot["bottom"] - plot["top"])

    drawn = []
    for i, s in enumerate(series):
        x = np.asarray(s.x, dtype=float)
        y = np.asarray(s.y, dtype=float)
        keep = np.isfinite(x) & np.isfinite(y) & ((y > 0) if log_y else True)
        coords = [(round(float(px(a)), 2), round(float(py(b)), 2)) for a, b in zip(x[keep], y[keep])]
        drawn.append({
            "label": s.label,
            "kind": s.kind,
            "color": s.color or PALETTE[i % len(PALETTE)],
            "coords": coords,
            "points": [f"{a},{b}" for a, b in coords],
        })

    svg = _env.get_template("chart.svg.j2").render(
        title=title,
        x_label=x_label,
        y_label=y_label + (" (log10)" if log_y else ""),
        width=width,
        height=height,
        plot=plot,
        x_ticks=[{"pos": round(float(px(t)), 2), "label": f"{t:g}"} for t in x_ticks],
        y_ticks=[{"pos": round(plot["bottom"] - (t - y_lo) / (y_hi - y_lo or 1.0)
                               * (plot["bottom"] - plot["top"]), 2), "label": f"{t:g}"}
                 for t in y_ticks],
        series=drawn,
        note=note,
    )
    target = write_atomic(path, svg)
    logger.debug(f"Rendered chart {target}")
    return target


def export_png(svg_path: os.PathLike) -> Optional[Path]:
    """Rasterize an SVG next to it; None when cairosvg is unavailable"""
    svg_path = Path(svg_path)
    png_path = svg_path.with_suffix(".png")
    try:
        import cairosvg
    except (ImportError, OSError) as e:
        logger.warning(f"PNG export skipped, cairosvg unavailable: {e}")
        return None
    try:
        data = cairosvg.svg2png(url=str(svg_path))
    except Exception as e:
        logger.error(f"PNG export failed for {svg_path}: {e}")
        return None
    return write_atomic(png_path, data)
