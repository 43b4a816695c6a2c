"""Minimal SVG line charts rendered straight from a results CSV."""
from __future__ import annotations

import csv
import math
from collections import defaultdict
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
           "#e377c2", "#7f7f7f")


def series_from_csv(path, x="budget", y="value", series="algo"):
    """Mean of ``y`` per ``(series, x)``, sorted by ``x``."""
    acc = defaultdict(lambda: defaultdict(list))
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            acc[row[series]][float(row[x])].append(float(row[y]))
    return {name: sorted((xv, sum(v) / len(v)) for xv, v in pts.items())
            for name, pts in acc.items()}


def _ticks(lo, hi, count=5):
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def line_chart(series: dict, title="", xlabel="", ylabel="", log_y=False,
               width=640, height=420) -> str:
    ml, mr, mt, mb = 70, 150, 40, 50
    pw, ph = width - ml - mr, height - mt - mb
    xs = [x for pts in series.values() for x, _ in pts]
    ys = [y for pts in series.values() for _, y in pts]
    if log_y:
        ys = [y for y in ys if y > 0]
    x0, x1 = (min(xs), max(xs)) if xs else (0.0, 1.0)
    y0, y1 = (min(ys), max(ys)) if ys else (0.0, 1.0)
    if log_y:
        y0, y1 = math.log10(y0), math.log10(y1)
    else:
        y0 = min(0.0, y0)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def px(x):
        return ml + (x - x0) / (x1 - x0) * pw

    def py(y):
        if log_y:
            y = math.log10(y)
        return mt + ph - (y - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'font-family="sans-serif" font-size="12">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">'
           f'{escape(title)}</text>',
           f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
           f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>']
    for xv in _ticks(x0, x1):
        out.append(f'<text x="{px(xv):.1f}" y="{mt + ph + 16}" text-anchor="middle">'
                   f'{xv:g}</text>')
    for yv in _ticks(y0, y1):
        label = 10 ** yv if log_y else yv
        ypos = mt + ph - (yv - y0) / (y1 - y0) * ph
        out.append(f'<text x="{ml - 6}" y="{ypos + 4:.1f}" text-anchor="end">{label:.3g}</text>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">'
               f'{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{mt + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {mt + ph / 2:.1f})">{escape(ylabel)}</text>')
    for i, (name, pts) in enumerate(sorted(series.items())):
        color = PALETTE[i % len(PALETTE)]
        pts = [(x, y) for x, y in pts if not log_y or y > 0]
        path = " ".join(f"{px(x):.1f},{py(y):.1f}" for x, y in pts)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{path}"/>')
        for x, y in pts:
            out.append(f'<circle cx="{px(x):.1f}" cy="{py(y):.1f}" r="3" fill="{color}"/>')
        ly = mt + 16 * i + 8
        out.append(f'<line x1="{ml + pw + 12}" y1="{ly}" x2="{ml + pw + 32}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw + 38}" y="{ly + 4}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_csv(csv_path, svg_path, x="budget", y="value", series="algo",
               title="", log_y=False) -> None:
    svg = line_chart(series_from_csv(csv_path, x, y, series), title=title,
                     xlabel=x, ylabel=y, log_y=log_y)
    with open(svg_path, "w") as f:
        f.write(svg)
