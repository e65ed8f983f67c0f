"""Matplotlib figures for the reporting paths of the CLI."""
from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .codes import Codeword, Realization
from .decide import vertex_bound
from .geometry import Point2, Semantics
from .svg import PALETTE


def plot_realization(
    real: Realization,
    reps: Optional[Sequence[tuple[Codeword, Point2]]] = None,
    title: Optional[str] = None,
):
    """Translucent filled figures with labels and optional witness dots."""
    fig, ax = plt.subplots(figsize=(6, 6))
    for i, shape in enumerate(real.figures):
        color = PALETTE[i % len(PALETTE)]
        xs = [float(v.x) for v in shape.vertices]
        ys = [float(v.y) for v in shape.vertices]
        if len(xs) == 1:
            ax.plot(xs, ys, "o", color=color)
        elif len(xs) == 2:
            ax.plot(xs, ys, "-", color=color, linewidth=3, alpha=0.8)
        else:
            ax.fill(xs, ys, color=color, alpha=0.35)
            ax.plot(xs + xs[:1], ys + ys[:1], color=color, linewidth=1)
        ax.annotate(str(i + 1), (xs[0], ys[0]), color=color, fontsize=12)
    if reps:
        ax.plot(
            [float(p.x) for _w, p in reps],
            [float(p.y) for _w, p in reps],
            "k.",
            markersize=6,
        )
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_realization_figure(path: str, real: Realization, reps=None, title=None) -> None:
    fig = plot_realization(real, reps, title)
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_bounds_figure(path: str, max_n: int) -> None:
    """Growth of the sufficient vertex budgets, log scale."""
    ns = list(range(1, max_n + 1))
    closed = [vertex_bound(n, Semantics.CLOSED).total for n in ns]
    opened = [vertex_bound(n, Semantics.OPEN).total for n in ns]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ns, closed, "o-", label="closed")
    ax.semilogy(ns, opened, "s-", label="open")
    ax.set_xlabel("number of figures n")
    ax.set_ylabel("total vertex budget")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
