"""Curve exporters: CSV point lists and SVG polylines.

SVG output flips the vertical axis inside the viewBox so that rendered
pictures have the mathematical orientation (y up).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .parametrize import CurveApproximation

_AXIS_NAMES = {2: ["x", "y"], 3: ["x", "y", "z"]}


def _csv_header(d: int) -> str:
    return ",".join(_AXIS_NAMES.get(d, [f"x{i + 1}" for i in range(d)]))


def export_curve(curve: CurveApproximation, format: str, path, *,
                 rounded_corners: bool = False, stroke_width: float | None = None,
                 viewbox_padding: float | None = None) -> Path:
    """Write the polyline to `path` in the chosen format and return the path."""
    if len(curve.points) == 0:
        raise ValueError("curve has no points")
    path = Path(path)
    if format == "csv":
        path.write_text(curve_csv(curve), encoding="utf-8", newline="\n")
    elif format == "svg":
        path.write_text(
            curve_svg(curve, rounded_corners=rounded_corners,
                      stroke_width=stroke_width, viewbox_padding=viewbox_padding),
            encoding="utf-8", newline="\n",
        )
    else:
        raise ValueError(f"unknown format {format!r}; use 'svg' or 'csv'")
    return path


def curve_csv(curve: CurveApproximation) -> str:
    lines = [_csv_header(curve.points.shape[1])]
    for row in curve.points:
        lines.append(",".join(f"{x:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def read_curve_csv(path) -> np.ndarray:
    """Load a curve CSV back into an array of points."""
    text = Path(path).read_text(encoding="utf-8").strip().splitlines()
    return np.array([[float(x) for x in line.split(",")] for line in text[1:]])


def curve_svg(curve: CurveApproximation, *, rounded_corners: bool = False,
              stroke_width: float | None = None,
              viewbox_padding: float | None = None) -> str:
    points = curve.points
    if points.shape[1] != 2:
        raise ValueError("SVG export needs planar curves")
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    extent = float(max(hi - lo)) or 1.0
    pad = extent * 0.05 if viewbox_padding is None else viewbox_padding
    width = stroke_width if stroke_width is not None else extent / 256.0

    flipped = points.copy()
    flipped[:, 1] = (lo[1] + hi[1]) - points[:, 1]

    box = (lo[0] - pad, lo[1] - pad, (hi[0] - lo[0]) + 2 * pad,
           (hi[1] - lo[1]) + 2 * pad)
    header = (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{box[0]:.17g} {box[1]:.17g} {box[2]:.17g} {box[3]:.17g}">\n'
    )
    style = f'fill="none" stroke="black" stroke-width="{width:.17g}"'
    if rounded_corners:
        body = f'  <path d="{_rounded_path(flipped)}" {style}/>\n'
    else:
        coords = " ".join(f"{x:.17g},{y:.17g}" for x, y in flipped)
        body = f'  <polyline points="{coords}" {style}/>\n'
    return header + body + "</svg>\n"


def _rounded_path(points: np.ndarray, fraction: float = 0.25) -> str:
    """Quadratic fillets at interior vertices for self-avoiding rendering."""
    if len(points) < 3:
        coords = " ".join(f"L {x:.17g} {y:.17g}" for x, y in points[1:])
        return f"M {points[0][0]:.17g} {points[0][1]:.17g} {coords}"
    parts = [f"M {points[0][0]:.17g} {points[0][1]:.17g}"]
    for i in range(1, len(points) - 1):
        prev, here, nxt = points[i - 1], points[i], points[i + 1]
        len_in = float(np.linalg.norm(here - prev))
        len_out = float(np.linalg.norm(nxt - here))
        r = fraction * min(len_in, len_out)
        if len_in > 0:
            a = here - (here - prev) * (r / len_in)
            parts.append(f"L {a[0]:.17g} {a[1]:.17g}")
        if len_out > 0:
            b = here + (nxt - here) * (r / len_out)
            parts.append(f"Q {here[0]:.17g} {here[1]:.17g} {b[0]:.17g} {b[1]:.17g}")
    parts.append(f"L {points[-1][0]:.17g} {points[-1][1]:.17g}")
    return " ".join(parts)
