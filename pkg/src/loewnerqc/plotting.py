"""Hand-rolled SVG emitters for boundary curves and dilatation heat maps.

Writing the SVG 1.1 by hand (fixed decimal formatting, no timestamps, no
generated ids) keeps the plot files byte-identical across runs, which the
pipeline promises.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["curves_svg", "mu_heatmap_svg"]

_PALETTE = (
    "#1b6ca8", "#e07b39", "#2f9e44", "#c92a2a", "#845ef7",
    "#0b7285", "#a61e4d", "#5c940d",
)


def _f(x: float) -> str:
    return f"{x:.6f}"


def _bounds(curves):
    xs = np.concatenate([c.real for c in curves])
    ys = np.concatenate([c.imag for c in curves])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    return x0 - pad, x1 + pad, y0 - pad, y1 + pad


def curves_svg(curves, labels, size: int = 640) -> str:
    """Closed polyline paths for a family of image boundary curves.

    ``curves`` is a sequence of complex arrays (the sampled images of a
    circle under f(., t)); nested curves visualize the subordination of the
    chain's image domains.
    """
    x0, x1, y0, y1 = _bounds(curves)
    scale = size / max(x1 - x0, y1 - y0)

    def px(w: complex) -> str:
        # flip the vertical axis: SVG y grows downward
        return f"{_f((w.real - x0) * scale)},{_f((y1 - w.imag) * scale)}"

    width = _f((x1 - x0) * scale)
    height = _f((y1 - y0) * scale)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for i, (curve, label) in enumerate(zip(curves, labels)):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " L ".join(px(complex(w)) for w in curve)
        out.append(
            f'<path d="M {pts} Z" fill="none" stroke="{color}" '
            f'stroke-width="1.5"><title>{label}</title></path>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _gray(value: float) -> str:
    level = int(round(235 - 215 * min(max(value, 0.0), 1.0)))
    return f"#{level:02x}{level:02x}{level:02x}"


def mu_heatmap_svg(rows, size: int = 640) -> str:
    """Annular heat map of |mu| from extension CSV rows (r, theta, ..., |mu|).

    The exterior annulus is rendered with display radius 1 + log(r)/log(r_max)
    so the far field stays visible; each (r, theta) cell is a filled quad.
    A uniform field (e.g. a conformal extension) renders as a single fill
    value.
    """
    rows = sorted(rows, key=lambda row: (row[0], row[1]))
    radii = sorted({row[0] for row in rows})
    by_radius = {r: sorted(row for row in rows if row[0] == r) for r in radii}
    mus = [row[6] for row in rows]
    lo, hi = min(mus), max(mus)
    span = hi - lo
    r_max = radii[-1]

    def display(r: float) -> float:
        if r_max <= 1.0:
            return 1.0
        return 1.0 + math.log(max(r, 1.0)) / math.log(r_max) if r_max > 1 else 1.0

    extent = 2.2
    scale = size / (2 * extent)

    def px(rho: float, theta: float) -> str:
        x = (rho * math.cos(theta) + extent) * scale
        y = (extent - rho * math.sin(theta)) * scale
        return f"{_f(x)},{_f(y)}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    for i, r in enumerate(radii):
        r_next = radii[i + 1] if i + 1 < len(radii) else r * 1.15
        rho0, rho1 = display(r), display(min(r_next, r_max * 1.15))
        ring = by_radius[r]
        n = len(ring)
        for j, row in enumerate(ring):
            theta = row[1]
            theta_next = ring[(j + 1) % n][1] if n > 1 else theta + 2 * math.pi
            if theta_next <= theta:
                theta_next += 2 * math.pi
            mu = row[6]
            value = 0.5 if span < 1e-15 else (mu - lo) / span
            quad = " L ".join(
                [
                    px(rho0, theta),
                    px(rho1, theta),
                    px(rho1, theta_next),
                    px(rho0, theta_next),
                ]
            )
            out.append(f'<path d="M {quad} Z" fill="{_gray(value)}" stroke="none"/>')
    out.append(
        f'<circle cx="{_f(extent * scale)}" cy="{_f(extent * scale)}" '
        f'r="{_f(scale)}" fill="#ffffff" stroke="#333333" stroke-width="1"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
