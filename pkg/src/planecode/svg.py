"""Deterministic SVG rendering of realizations.

Builds the SVG text directly: fixed palette, fixed attribute order, and
rationals converted to decimal only while writing coordinates, so equal
inputs produce byte-identical files.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .codes import Codeword, Realization
from .geometry import Point2

PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def render_svg(
    real: Realization,
    reps: Optional[Sequence[tuple[Codeword, Point2]]] = None,
    width: int = 480,
) -> str:
    """One translucent filled shape per figure, labeled by index."""
    xs = [v.x for fig in real.figures for v in fig.vertices]
    ys = [v.y for fig in real.figures for v in fig.vertices]
    if reps:
        xs += [p.x for _w, p in reps]
        ys += [p.y for _w, p in reps]
    xlo, xhi = min(xs), max(xs)
    ylo, yhi = min(ys), max(ys)
    span_x = max(xhi - xlo, Fraction(1))
    span_y = max(yhi - ylo, Fraction(1))
    margin_x = span_x / 10
    margin_y = span_y / 10
    xlo, xhi = xlo - margin_x, xhi + margin_x
    ylo, yhi = ylo - margin_y, yhi + margin_y

    # SVG y grows downward; reflect through the box midline
    flip = ylo + yhi

    def sx(v: Fraction) -> str:
        return _fmt(float(v))

    def sy(v: Fraction) -> str:
        return _fmt(float(flip - v))

    height = int(round(width * float((yhi - ylo) / (xhi - xlo))))
    stroke = float(xhi - xlo) / 200
    marker = float(xhi - xlo) / 100

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="{sx(xlo)} {sy(yhi)} '
        f"{_fmt(float(xhi - xlo))} {_fmt(float(yhi - ylo))}\">",
    ]
    for i, fig in enumerate(real.figures):
        color = PALETTE[i % len(PALETTE)]
        verts = fig.vertices
        if len(verts) == 1:
            v = verts[0]
            lines.append(
                f'  <circle cx="{sx(v.x)}" cy="{sy(v.y)}" '
                f'r="{_fmt(marker)}" fill="{color}" fill-opacity="0.8"/>'
            )
        elif len(verts) == 2:
            u, v = verts
            lines.append(
                f'  <line x1="{sx(u.x)}" y1="{sy(u.y)}" x2="{sx(v.x)}" '
                f'y2="{sy(v.y)}" stroke="{color}" '
                f'stroke-width="{_fmt(2 * stroke)}" stroke-opacity="0.8"/>'
            )
        else:
            path = " ".join(
                f"{'M' if k == 0 else 'L'} {sx(v.x)} {sy(v.y)}"
                for k, v in enumerate(verts)
            )
            lines.append(
                f'  <path d="{path} Z" fill="{color}" fill-opacity="0.35" '
                f'stroke="{color}" stroke-width="{_fmt(stroke)}"/>'
            )
        anchor = verts[0]
        lines.append(
            f'  <text x="{sx(anchor.x)}" y="{sy(anchor.y)}" '
            f'font-size="{_fmt(6 * stroke)}" fill="{color}">{i + 1}</text>'
        )
    if reps:
        for _word, p in reps:
            lines.append(
                f'  <circle cx="{sx(p.x)}" cy="{sy(p.y)}" '
                f'r="{_fmt(marker / 2)}" fill="#000000"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
