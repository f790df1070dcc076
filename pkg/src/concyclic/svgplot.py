"""SVG rendering of 2-dimensional circle certificates.

Floating point appears here and only here, strictly for pixel placement;
the certificate itself stays exact.  Output is deterministic for a fixed
certificate.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["render_svg"]

_SIZE = 480.0
_WINDOW = 1.5  # lattice window, in multiples of the radius


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_svg(cert: dict) -> str:
    """Draw the circle, nearby lattice points, and the on-circle points."""
    if cert.get("kind") != "circle" or len(cert["center"]) != 2:
        raise ValueError("SVG rendering supports 2-dimensional circle certificates only")

    metric = [[Fraction(v) for v in row] for row in cert["metric"]]
    center = [Fraction(c) for c in cert["center"]]
    r2 = Fraction(cert["radius2"])
    on_circle = {tuple(p) for p in cert["points"]}

    # Cholesky embedding of the metric (display only)
    m11, m12, m22 = float(metric[0][0]), float(metric[0][1]), float(metric[1][1])
    l11 = math.sqrt(m11)
    l12 = m12 / l11
    l22 = math.sqrt(m22 - l12 * l12)

    def embed(x: float, y: float) -> tuple[float, float]:
        return (x * l11 + y * l12, y * l22)

    cx, cy = embed(float(center[0]), float(center[1]))
    radius = math.sqrt(float(r2))
    window = max(_WINDOW * radius, 1.0)
    scale = _SIZE / (2.0 * window)

    def to_px(p: tuple[float, float]) -> tuple[float, float]:
        return ((p[0] - cx) * scale + _SIZE / 2, (cy - p[1]) * scale + _SIZE / 2)

    # lattice points whose embedding falls inside the window
    y_lo = int(math.floor((cy - window) / l22)) - 1
    y_hi = int(math.ceil((cy + window) / l22)) + 1
    dots = []
    for y in range(y_lo, y_hi + 1):
        x_lo = int(math.floor((cx - window - y * l12) / l11)) - 1
        x_hi = int(math.ceil((cx + window - y * l12) / l11)) + 1
        for x in range(x_lo, x_hi + 1):
            ex, ey = embed(x, y)
            if abs(ex - cx) <= window and abs(ey - cy) <= window:
                dots.append((x, y, ex, ey))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{int(_SIZE)}" height="{int(_SIZE)}" '
        f'viewBox="0 0 {int(_SIZE)} {int(_SIZE)}">',
        f'<rect width="{int(_SIZE)}" height="{int(_SIZE)}" fill="white"/>',
    ]
    ccx, ccy = to_px((cx, cy))
    parts.append(
        f'<circle cx="{_fmt(ccx)}" cy="{_fmt(ccy)}" r="{_fmt(radius * scale)}" '
        f'fill="none" stroke="#2b6cb0" stroke-width="1.5"/>'
    )
    for x, y, ex, ey in sorted(dots):
        px, py = to_px((ex, ey))
        if (x, y) in on_circle:
            parts.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="5" '
                f'fill="#c53030" class="on-circle"/>'
            )
        else:
            parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="2" fill="#a0aec0"/>')
    parts.append(
        f'<circle cx="{_fmt(ccx)}" cy="{_fmt(ccy)}" r="3" fill="none" '
        f'stroke="#2b6cb0" stroke-width="1"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
