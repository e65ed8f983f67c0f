"""Seeded random realizations for tests and the `gen` subcommand."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .codes import Realization
from .geometry import ConvexFigure, Point2, Semantics, convex_hull

DENOMINATORS = (1, 2, 4, 8)


def random_rational(
    rng: random.Random,
    lo: int,
    hi: int,
    denominators: Sequence[int] = DENOMINATORS,
) -> Fraction:
    den = rng.choice(denominators)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_figure(
    rng: random.Random,
    max_vertices: int = 8,
    coord_range: int = 16,
    min_dim: int = 0,
) -> ConvexFigure:
    """Hull of a few random rational points; min_dim=2 forces a polygon."""
    while True:
        count = rng.randint(max(1, min_dim + 1), max_vertices)
        points = [
            Point2(
                random_rational(rng, 0, coord_range),
                random_rational(rng, 0, coord_range),
            )
            for _ in range(count)
        ]
        fig = convex_hull(points)
        assert fig is not None
        if fig.dim >= min_dim:
            return fig


def random_realization(
    rng: random.Random,
    n: int,
    max_vertices: int = 8,
    coord_range: int = 16,
    semantics: Semantics = Semantics.CLOSED,
    degenerate_ok: bool = True,
) -> Realization:
    min_dim = 0 if degenerate_ok else 2
    return Realization(
        semantics,
        tuple(
            random_figure(rng, max_vertices, coord_range, min_dim)
            for _ in range(n)
        ),
    )
