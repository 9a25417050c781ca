"""Minimal standalone SVG 1.1 plots: line charts and heatmaps."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#16a085", "#7f8c8d")

_HEAD = (
    '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
    'viewBox="0 0 {w} {h}">\n'
    '<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>\n'
)


def _scale(lo, hi, a, b):
    if hi == lo:
        hi = lo + 1.0
    return lambda v: a + (np.asarray(v) - lo) * (b - a) / (hi - lo)


def line_plot(series, title="", xlabel="", ylabel="", width=640, height=360):
    """``series`` is a list of ``(label, x, y, dashed)``; NaNs break a line into segments."""
    pad = 50
    xs = np.concatenate([np.asarray(s[1], float) for s in series])
    ys = np.concatenate([np.asarray(s[2], float) for s in series])
    ys = ys[np.isfinite(ys)]
    sx = _scale(xs.min(), xs.max(), pad, width - pad)
    sy = _scale(ys.min(), ys.max(), height - pad, pad)
    out = [_HEAD.format(w=width, h=height)]
    out.append(
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" '
        'fill="none" stroke="black" stroke-width="1"/>\n'
    )
    for i, (label, x, y, dashed) in enumerate(series):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        color = PALETTE[i % len(PALETTE)]
        dash = ' stroke-dasharray="4,3"' if dashed else ""
        ok = np.isfinite(y)
        breaks = np.flatnonzero(np.diff(ok.astype(int)) != 0) + 1
        for seg in np.split(np.arange(len(x)), breaks):
            seg = seg[ok[seg]]
            if seg.size < 2:
                continue
            pts = " ".join(f"{px:.2f},{py:.2f}" for px, py in zip(sx(x[seg]), sy(y[seg])))
            out.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" '
                f'stroke-width="1.2"{dash}/>\n'
            )
        out.append(
            f'<text x="{width - pad + 4}" y="{pad + 14 * (i + 1)}" font-size="10" '
            f'fill="{color}">{escape(str(label))}</text>\n'
        )
    out.append(_labels(title, xlabel, ylabel, width, height, xs, ys))
    out.append("</svg>\n")
    return "".join(out)


def scatter_plot(points, title="", width=420, height=420, unit_circle=True):
    """``points`` is a list of ``(label, complex array)``."""
    pad = 40
    allp = np.concatenate([np.asarray(p[1], complex) for p in points])
    r = max(1.05, float(np.abs(allp).max()) * 1.05)
    sx = _scale(-r, r, pad, width - pad)
    sy = _scale(-r, r, height - pad, pad)
    out = [_HEAD.format(w=width, h=height)]
    if unit_circle:
        cx, cy = float(sx(0)), float(sy(0))
        rad = float(sx(1) - sx(0))
        out.append(
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{rad:.2f}" fill="none" '
            'stroke="gray" stroke-dasharray="3,3"/>\n'
        )
    for i, (label, pts) in enumerate(points):
        color = PALETTE[i % len(PALETTE)]
        for p in np.asarray(pts, complex):
            out.append(f'<circle cx="{float(sx(p.real)):.2f}" cy="{float(sy(p.imag)):.2f}" r="1.5" fill="{color}"/>\n')
        out.append(f'<text x="{pad}" y="{14 * (i + 1)}" font-size="10" fill="{color}">{escape(str(label))}</text>\n')
    if title:
        out.append(f'<text x="{width / 2}" y="{height - 8}" text-anchor="middle" font-size="12">{escape(title)}</text>\n')
    out.append("</svg>\n")
    return "".join(out)


def heatmap(z, x, y, title="", width=480, height=360):
    """``z[i, j]`` at ``(x[j], y[i])``, blue (low) to red (high)."""
    z = np.asarray(z, float)
    pad = 50
    ny, nx = z.shape
    lo, hi = np.nanmin(z), np.nanmax(z)
    span = hi - lo if hi > lo else 1.0
    cw = (width - 2 * pad) / nx
    ch = (height - 2 * pad) / ny
    out = [_HEAD.format(w=width, h=height)]
    for i in range(ny):
        for j in range(nx):
            t = (z[i, j] - lo) / span
            rgb = (int(255 * t), int(80 * (1 - abs(2 * t - 1))), int(255 * (1 - t)))
            out.append(
                f'<rect x="{pad + j * cw:.2f}" y="{height - pad - (i + 1) * ch:.2f}" '
                f'width="{cw + 0.05:.2f}" height="{ch + 0.05:.2f}" fill="rgb{rgb}"/>\n'
            )
    out.append(_labels(title, "theta", "tau", width, height, np.asarray(x), np.asarray(y)))
    out.append("</svg>\n")
    return "".join(out)


def _labels(title, xlabel, ylabel, width, height, xs, ys):
    parts = []
    if title:
        parts.append(f'<text x="{width / 2}" y="20" text-anchor="middle" font-size="13">{escape(title)}</text>\n')
    if xlabel:
        parts.append(f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle" font-size="11">{escape(xlabel)}</text>\n')
    if ylabel:
        parts.append(
            f'<text x="14" y="{height / 2}" font-size="11" transform="rotate(-90 14 {height / 2})" '
            f'text-anchor="middle">{escape(ylabel)}</text>\n'
        )
    if len(xs) and len(ys):
        parts.append(f'<text x="50" y="{height - 34}" font-size="9">{xs.min():.3g}</text>\n')
        parts.append(f'<text x="{width - 50}" y="{height - 34}" font-size="9" text-anchor="end">{xs.max():.3g}</text>\n')
        parts.append(f'<text x="46" y="{height - 50}" font-size="9" text-anchor="end">{ys.min():.3g}</text>\n')
        parts.append(f'<text x="46" y="58" font-size="9" text-anchor="end">{ys.max():.3g}</text>\n')
    return "".join(parts)
