"""Exact-arithmetic workbench for convex codes in the plane."""

from .geometry import (
    ConvexFigure,
    Line2,
    Point2,
    Semantics,
    area,
    centroid,
    clip_halfplane,
    convex_hull,
    figure,
    intersect_figures,
    membership,
    orientation,
    pt,
)
from .codes import (
    Arrangement,
    Code,
    OversizeError,
    Realization,
    build_arrangement,
    code_of,
    far_point,
    members_of,
    pattern_at,
    representatives_of,
    sample_patterns,
    word_of,
)

__all__ = [
    "Arrangement",
    "Code",
    "ConvexFigure",
    "Line2",
    "OversizeError",
    "Point2",
    "Realization",
    "Semantics",
    "area",
    "build_arrangement",
    "centroid",
    "clip_halfplane",
    "code_of",
    "convex_hull",
    "far_point",
    "figure",
    "intersect_figures",
    "members_of",
    "membership",
    "orientation",
    "pattern_at",
    "pt",
    "representatives_of",
    "sample_patterns",
    "word_of",
]

__version__ = "0.1.0"
