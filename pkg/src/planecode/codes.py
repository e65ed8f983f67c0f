"""Convex codes of polygon tuples, via exhaustive face enumeration.

The code of a tuple of figures is the set of membership patterns over all
points of the plane.  Every figure here is a Boolean condition over
halfplanes bounded by the supporting lines of the figure edges, so the
pattern is constant on the relative interior of each face of that line
arrangement.  Enumerating one exact representative point per face (plus
the original vertices, which catch degenerate figures, and one far point
for the unbounded face) therefore yields the exact code.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from .geometry import ConvexFigure, Line2, Point2, Semantics, membership

BITSET_CAP = 63

Codeword = int  # bit i set <=> figure i (0-based) contains the point


class OversizeError(ValueError):
    """Raised when a realization exceeds the codeword bitset capacity."""


def word_of(members: Iterable[int]) -> Codeword:
    w = 0
    for i in members:
        w |= 1 << i
    return w


def members_of(word: Codeword) -> tuple[int, ...]:
    out = []
    i = 0
    while word:
        if word & 1:
            out.append(i)
        word >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Code:
    """A set of codewords over n figures (0-based bitmask convention)."""

    n: int
    words: frozenset[Codeword]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "words", frozenset(self.words))
        for w in self.words:
            if w < 0 or w >> self.n:
                raise ValueError(f"codeword {w:b} has bits beyond n={self.n}")

    def sorted_words(self) -> list[Codeword]:
        return sorted(self.words)

    def __contains__(self, word: Codeword) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class Realization:
    """An ordered tuple of convex figures with closed or open semantics.

    Under open semantics each figure denotes its interior, so degenerate
    members (points, segments) denote the empty set.
    """

    semantics: Semantics
    figures: tuple[ConvexFigure, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "semantics", Semantics(self.semantics))
        object.__setattr__(self, "figures", tuple(self.figures))
        if not self.figures:
            raise ValueError("a realization needs at least one figure")

    @property
    def n(self) -> int:
        return len(self.figures)

    def with_figure(self, index: int, fig: ConvexFigure) -> "Realization":
        figs = list(self.figures)
        figs[index] = fig
        return Realization(self.semantics, tuple(figs))

    def with_semantics(self, semantics: Semantics) -> "Realization":
        return Realization(semantics, self.figures)


@dataclass(frozen=True)
class Arrangement:
    """Supporting lines plus one exact representative point per face.

    face_reps pairs each point with the dimension of the arrangement face
    it represents (0 vertices/crossings, 1 edge interiors, 2 cells).
    """

    lines: tuple[Line2, ...]
    face_reps: tuple[tuple[Point2, int], ...]


def pattern_at(real: Realization, p: Point2) -> Codeword:
    """Membership pattern of the tuple at p, as a bitmask."""
    w = 0
    for i, fig in enumerate(real.figures):
        if membership(fig, p, real.semantics):
            w |= 1 << i
    return w


def far_point(real: Realization) -> Point2:
    """A deterministic point outside every figure: (M+1, M+1)."""
    m = max(
        max(abs(v.x), abs(v.y)) for fig in real.figures for v in fig.vertices
    )
    return Point2(m + 1, m + 1)


# ---------------------------------------------------------------------------
# Fast exact evaluation: scale to integers, test halfplane rows.


@dataclass(frozen=True)
class _ScaledFigure:
    rows: tuple[tuple[int, int, int], ...]  # a*x + b*y - c <= 0 rows
    degenerate: bool


def _edge_rows(verts: list[tuple[int, int]]) -> list[tuple[int, int, int]]:
    rows = []
    k = len(verts)
    for i in range(k):
        (ux, uy), (vx, vy) = verts[i], verts[(i + 1) % k]
        a, b = vy - uy, ux - vx
        rows.append((a, b, a * ux + b * uy))
    return rows


def _scale_figure(fig: ConvexFigure, scale: int) -> _ScaledFigure:
    verts = [(int(v.x * scale), int(v.y * scale)) for v in fig.vertices]
    if len(verts) >= 3:
        return _ScaledFigure(tuple(_edge_rows(verts)), False)
    if len(verts) == 2:
        (ux, uy), (vx, vy) = verts
        a, b = vy - uy, ux - vx
        c = a * ux + b * uy
        dx, dy = vx - ux, vy - uy
        rows = (
            (a, b, c),
            (-a, -b, -c),
            (-dx, -dy, -(dx * ux + dy * uy)),
            (dx, dy, dx * vx + dy * vy),
        )
        return _ScaledFigure(rows, True)
    ((qx, qy),) = verts
    rows = ((1, 0, qx), (-1, 0, -qx), (0, 1, qy), (0, -1, -qy))
    return _ScaledFigure(rows, True)


@dataclass(frozen=True)
class _ScaledRealization:
    scale: int
    figures: tuple[_ScaledFigure, ...]
    open_semantics: bool

    def pattern(self, nx: int, ny: int, d: int) -> Codeword:
        """Pattern at homogeneous point (nx/d, ny/d) in scaled coordinates."""
        w = 0
        for i, fig in enumerate(self.figures):
            if self.open_semantics:
                if fig.degenerate:
                    continue
                if all(a * nx + b * ny - c * d < 0 for a, b, c in fig.rows):
                    w |= 1 << i
            else:
                if all(a * nx + b * ny - c * d <= 0 for a, b, c in fig.rows):
                    w |= 1 << i
        return w


def _common_scale(real: Realization) -> int:
    return lcm(
        *(
            coord.denominator
            for fig in real.figures
            for v in fig.vertices
            for coord in (v.x, v.y)
        )
    )


def _scaled(real: Realization) -> _ScaledRealization:
    scale = _common_scale(real)
    return _ScaledRealization(
        scale,
        tuple(_scale_figure(fig, scale) for fig in real.figures),
        real.semantics is Semantics.OPEN,
    )


def _homogeneous(p: Point2, scale: int) -> tuple[int, int, int]:
    """(nx, ny, d) with p*scale = (nx/d, ny/d), d > 0."""
    sx = p.x * scale
    sy = p.y * scale
    d = lcm(sx.denominator, sy.denominator)
    return int(sx * d), int(sy * d), d


# ---------------------------------------------------------------------------
# Arrangement construction.


def _arrangement_lines(real: Realization) -> list[Line2]:
    seen: dict[Line2, None] = {}
    for fig in real.figures:
        for u, v in fig.edges():
            seen.setdefault(Line2.through(u, v), None)
    return list(seen)


def build_arrangement(real: Realization) -> Arrangement:
    """Lines of all figure edges plus representative points of every face.

    Representatives: (a) all pairwise line crossings, (b) midpoints of the
    segments between consecutive marked points along each line (crossings
    and figure vertices both mark the line) plus one point beyond each
    extreme, (c) perpendicular half-step neighbours of every on-line
    representative, one per side, (d) all figure vertices, (e) a far point.
    """
    lines = _arrangement_lines(real)
    vertices = [v for fig in real.figures for v in fig.vertices]

    reps: dict[Point2, int] = {}

    def add(p: Point2, dim: int) -> None:
        prev = reps.get(p)
        if prev is None or dim < prev:
            reps[p] = dim

    for v in vertices:
        add(v, 0)

    crossings: list[list[Point2]] = [[] for _ in lines]
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = lines[i].intersect(lines[j])
            if p is not None:
                add(p, 0)
                crossings[i].append(p)
                crossings[j].append(p)

    on_line: list[tuple[Point2, Line2]] = []
    for line, crossed in zip(lines, crossings):
        dx, dy = line.direction()
        # step of max-norm 1 keeps the beyond-extreme points near the box
        step = Fraction(1, max(abs(dx), abs(dy)))
        marks = {p for p in crossed}
        marks.update(v for v in vertices if line.contains(v))
        ordered = sorted(marks, key=lambda p: dx * p.x + dy * p.y)
        for a, b in zip(ordered, ordered[1:]):
            mid = Point2((a.x + b.x) / 2, (a.y + b.y) / 2)
            add(mid, 1)
            on_line.append((mid, line))
        lo = Point2(ordered[0].x - step * dx, ordered[0].y - step * dy)
        hi = Point2(ordered[-1].x + step * dx, ordered[-1].y + step * dy)
        add(lo, 1)
        add(hi, 1)
        on_line.append((lo, line))
        on_line.append((hi, line))

    for m, line in on_line:
        for step in _perp_steps(m, line, lines):
            add(step, 2)

    add(far_point(real), 2)

    return Arrangement(tuple(lines), tuple(reps.items()))


def _perp_steps(m: Point2, line: Line2, lines: Sequence[Line2]) -> list[Point2]:
    """m +- (t/2)*normal, t the least positive crossing parameter per side."""
    nx, ny = Fraction(line.a), Fraction(line.b)
    best_pos: Optional[Fraction] = None
    best_neg: Optional[Fraction] = None
    for other in lines:
        if other == line:
            continue
        den = other.a * nx + other.b * ny
        if den == 0:
            continue
        t = (other.c - other.a * m.x - other.b * m.y) / den
        if t > 0 and (best_pos is None or t < best_pos):
            best_pos = t
        elif t < 0 and (best_neg is None or t > best_neg):
            best_neg = t
    unit = Fraction(1, max(abs(line.a), abs(line.b)))
    tp = best_pos if best_pos is not None else unit
    tn = best_neg if best_neg is not None else -unit
    return [
        Point2(m.x + tp / 2 * nx, m.y + tp / 2 * ny),
        Point2(m.x + tn / 2 * nx, m.y + tn / 2 * ny),
    ]


# ---------------------------------------------------------------------------
# The code itself.


@lru_cache(maxsize=512)
def _code_and_reps(
    real: Realization,
) -> tuple[Code, tuple[tuple[Codeword, Point2], ...]]:
    if real.n > BITSET_CAP:
        raise OversizeError(
            f"n={real.n} exceeds the codeword capacity of {BITSET_CAP}"
        )
    arrangement = build_arrangement(real)
    scaled = _scaled(real)
    best: dict[Codeword, Point2] = {}
    for p, _dim in arrangement.face_reps:
        nx, ny, d = _homogeneous(p, scaled.scale)
        w = scaled.pattern(nx, ny, d)
        cur = best.get(w)
        if cur is None or p < cur:
            best[w] = p
    code = Code(real.n, frozenset(best))
    reps = tuple(sorted(best.items()))
    return code, reps


def code_of(real: Realization) -> Code:
    """The exact convex code of the realization."""
    return _code_and_reps(real)[0]


def representatives_of(real: Realization) -> list[tuple[Codeword, Point2]]:
    """One (codeword, witness point) pair per codeword.

    The witness is the lexicographically least representative point that
    achieves the codeword, so the result is a pure function of the
    canonicalized realization.
    """
    return list(_code_and_reps(real)[1])


def representative_points(real: Realization) -> list[Point2]:
    return [p for _w, p in representatives_of(real)]


# ---------------------------------------------------------------------------
# Monte-Carlo sampling (soundness oracle).


def sample_patterns(
    real: Realization, count: int, seed: int, denominator: int = 64
) -> frozenset[Codeword]:
    """Patterns at `count` random rational points around the realization.

    Points are sampled on the grid (1/denominator)*Z^2 over the joint
    bounding box enlarged by half its span on every side, and evaluated
    exactly, so every returned word is a true member of the code.  Uses
    vectorized integer arithmetic when coefficient bounds allow.
    """
    boxes = [fig.bounding_box() for fig in real.figures]
    xlo = min(b[0] for b in boxes)
    ylo = min(b[1] for b in boxes)
    xhi = max(b[2] for b in boxes)
    yhi = max(b[3] for b in boxes)
    pad = max(xhi - xlo, yhi - ylo, Fraction(1)) / 2
    xlo, xhi = xlo - pad, xhi + pad
    ylo, yhi = ylo - pad, yhi + pad

    scaled = _scaled(real)
    d = denominator * scaled.scale  # sample denominator in scaled coords
    lo_x, hi_x = int(xlo * d), int(xhi * d) + 1
    lo_y, hi_y = int(ylo * d), int(yhi * d) + 1

    max_coeff = max(
        max(abs(a), abs(b), abs(c))
        for fig in scaled.figures
        for a, b, c in fig.rows
    )
    max_coord = max(abs(lo_x), abs(hi_x), abs(lo_y), abs(hi_y)) + 1
    if max_coeff * max(max_coord, d) * 3 < 2 ** 62:
        rng = np.random.default_rng(seed)
        nx = rng.integers(lo_x, hi_x, size=count, dtype=np.int64)
        ny = rng.integers(lo_y, hi_y, size=count, dtype=np.int64)
        return _sample_vectorized(scaled, nx, ny, d)
    pyrng = random.Random(seed)
    return frozenset(
        scaled.pattern(pyrng.randint(lo_x, hi_x), pyrng.randint(lo_y, hi_y), d)
        for _ in range(count)
    )


def _sample_vectorized(
    scaled: _ScaledRealization, nx: np.ndarray, ny: np.ndarray, d: int
) -> frozenset[Codeword]:
    words = np.zeros(len(nx), dtype=np.int64)
    for i, fig in enumerate(scaled.figures):
        if scaled.open_semantics and fig.degenerate:
            continue
        member = np.ones(len(nx), dtype=bool)
        for a, b, c in fig.rows:
            vals = a * nx + b * ny - c * d
            member &= (vals < 0) if scaled.open_semantics else (vals <= 0)
        words |= member.astype(np.int64) << i
    return frozenset(int(w) for w in np.unique(words))
