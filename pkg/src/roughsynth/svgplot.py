"""Minimal standalone SVG line plots (no plotting library needed)."""
from __future__ import annotations

import math
from html import escape
from pathlib import Path

import numpy as np

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"]

WIDTH, HEIGHT = 720, 480
MARGIN = dict(left=80, right=170, top=40, bottom=60)


def _ticks(lo, hi, count=6):
    if hi <= lo:
        return [lo]
    return list(np.linspace(lo, hi, count))


def _segments(xs, ys):
    """Split a polyline wherever a point is not finite."""
    seg = []
    for x, y in zip(xs, ys):
        if math.isfinite(x) and math.isfinite(y):
            seg.append((x, y))
        elif seg:
            yield seg
            seg = []
    if seg:
        yield seg


def line_plot(series, title="", xlabel="", ylabel="", log_y=False) -> str:
    """SVG text for ``series``, a list of ``(label, x, y)``.

    With ``log_y`` non-positive values are dropped (they break the line).
    """
    prepared = []
    for label, x, y in series:
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if log_y:
            with np.errstate(divide="ignore", invalid="ignore"):
                y = np.where(y > 0, np.log10(y), np.nan)
        prepared.append((label, x, y))

    finite_x = np.concatenate([x[np.isfinite(x)] for _, x, _ in prepared] or [np.zeros(1)])
    finite_y = np.concatenate([y[np.isfinite(y)] for _, _, y in prepared] or [np.zeros(1)])
    if finite_y.size == 0:
        finite_y = np.zeros(1)
    x0, x1 = float(finite_x.min()), float(finite_x.max())
    y0, y1 = float(finite_y.min()), float(finite_y.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(v):
        return MARGIN["left"] + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return MARGIN["top"] + (1.0 - (v - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>')
    for t in _ticks(x0, x1):
        out.append(
            f'<text x="{sx(t):.1f}" y="{MARGIN["top"] + ph + 18}" text-anchor="middle" '
            f'font-size="11">{t:.3g}</text>'
        )
    for t in _ticks(y0, y1):
        label = f"1e{t:.2g}" if log_y else f"{t:.3g}"
        out.append(
            f'<text x="{MARGIN["left"] - 6}" y="{sy(t) + 4:.1f}" text-anchor="end" '
            f'font-size="11">{label}</text>'
        )
    if xlabel:
        out.append(
            f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 16}" text-anchor="middle" '
            f'font-size="13">{escape(xlabel)}</text>'
        )
    if ylabel:
        cy = MARGIN["top"] + ph / 2
        out.append(
            f'<text x="18" y="{cy:.1f}" text-anchor="middle" font-size="13" '
            f'transform="rotate(-90 18 {cy:.1f})">{escape(ylabel)}</text>'
        )
    for i, (label, x, y) in enumerate(prepared):
        color = PALETTE[i % len(PALETTE)]
        for seg in _segments(x, y):
            pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in seg)
            out.append(f'<polyline class="series" data-label="{escape(label)}" points="{pts}" '
                       f'fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = MARGIN["top"] + 14 + 18 * i
        lx = WIDTH - MARGIN["right"] + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly + 4}" font-size="12">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_plot(path, *args, **kwargs) -> None:
    Path(path).write_text(line_plot(*args, **kwargs))
