"""Exact rational primitives for planar convex geometry.

Coordinates are `fractions.Fraction` throughout, so every predicate
(orientation, membership, clipping) is decided exactly.  Points that sit
on edges or vertices are classified without tolerances, which is what
makes the code computations downstream trustworthy.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence, Union

Scalar = Union[int, str, Fraction]


class Semantics(str, Enum):
    """Whether a figure denotes a closed point set or its interior."""

    CLOSED = "closed"
    OPEN = "open"


def _frac(v: Scalar) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True, order=True)
class Point2:
    """Immutable exact point; ordering is lexicographic (x, then y)."""

    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "y", _frac(self.y))

    def __repr__(self) -> str:
        return f"({self.x}, {self.y})"


def pt(x: Scalar, y: Scalar) -> Point2:
    """Shorthand constructor accepting ints, Fractions or strings like '3/7'."""
    return Point2(_frac(x), _frac(y))


def orientation(a: Point2, b: Point2, c: Point2) -> int:
    """Sign of the cross product (b-a) x (c-a): +1 CCW, -1 CW, 0 collinear."""
    cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (cross > 0) - (cross < 0)


@dataclass(frozen=True)
class Line2:
    """Line a*x + b*y = c in canonical integer form.

    Canonical means gcd(a, b, c) = 1 and the first nonzero of (a, b) is
    positive, so equal lines compare equal and deduplicate in sets.
    """

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a == 0 and self.b == 0:
            raise ValueError("degenerate line: a = b = 0")
        g = gcd(gcd(abs(self.a), abs(self.b)), abs(self.c))
        sign = 1 if (self.a > 0 or (self.a == 0 and self.b > 0)) else -1
        g *= sign
        object.__setattr__(self, "a", self.a // g)
        object.__setattr__(self, "b", self.b // g)
        object.__setattr__(self, "c", self.c // g)

    @classmethod
    def from_coeffs(cls, a: Fraction, b: Fraction, c: Fraction) -> "Line2":
        """Build from rational coefficients by clearing denominators."""
        a, b, c = _frac(a), _frac(b), _frac(c)
        m = a.denominator * b.denominator * c.denominator
        return cls(int(a * m), int(b * m), int(c * m))

    @classmethod
    def through(cls, p: Point2, q: Point2) -> "Line2":
        if p == q:
            raise ValueError("two distinct points required")
        a = q.y - p.y
        b = p.x - q.x
        return cls.from_coeffs(a, b, a * p.x + b * p.y)

    def eval_at(self, p: Point2) -> Fraction:
        return self.a * p.x + self.b * p.y - self.c

    def side(self, p: Point2) -> int:
        v = self.eval_at(p)
        return (v > 0) - (v < 0)

    def contains(self, p: Point2) -> bool:
        return self.eval_at(p) == 0

    def direction(self) -> tuple[int, int]:
        """An integer direction vector of the line."""
        return (-self.b, self.a)

    def intersect(self, other: "Line2") -> Optional[Point2]:
        """Intersection point, or None for parallel (including equal) lines."""
        det = self.a * other.b - self.b * other.a
        if det == 0:
            return None
        x = Fraction(self.c * other.b - other.c * self.b, det)
        y = Fraction(self.a * other.c - other.a * self.c, det)
        return Point2(x, y)


def _hull_cycle(points: Iterable[Point2]) -> list[Point2]:
    """Strict convex hull as a CCW cycle starting at the lex-least vertex.

    Collinear and interior points are dropped; 0, 1 and 2 element outputs
    encode empty / point / segment.
    """
    pts = sorted(set(points))
    if len(pts) <= 1:
        return pts
    if len(pts) == 2:
        return pts
    lower: list[Point2] = []
    for p in pts:
        while len(lower) >= 2 and orientation(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orientation(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    if len(lower) == 2 and len(upper) == 2:
        return [pts[0], pts[-1]]  # all collinear
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class ConvexFigure:
    """A compact convex figure: point, segment, or strictly convex polygon.

    Vertices are stored canonically: CCW, starting at the lexicographically
    least vertex, every vertex an extreme point.  The constructor accepts
    the vertices in any order and canonicalizes, but rejects inputs with
    repeated or non-extreme (e.g. collinear interior) points.
    """

    vertices: tuple[Point2, ...]

    def __post_init__(self) -> None:
        verts = tuple(self.vertices)
        if not verts:
            raise ValueError("a figure needs at least one vertex")
        if len(set(verts)) != len(verts):
            raise ValueError("figure vertices must be pairwise distinct")
        cycle = _hull_cycle(verts)
        if len(cycle) != len(verts):
            raise ValueError(
                "figure vertices must be extreme points in convex position"
            )
        object.__setattr__(self, "vertices", tuple(cycle))

    @property
    def dim(self) -> int:
        k = len(self.vertices)
        return 2 if k >= 3 else k - 1

    def edges(self) -> Iterator[tuple[Point2, Point2]]:
        verts = self.vertices
        if len(verts) == 2:
            yield verts[0], verts[1]
        elif len(verts) >= 3:
            for i, v in enumerate(verts):
                yield v, verts[(i + 1) % len(verts)]

    def bounding_box(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def __repr__(self) -> str:
        return "Figure[" + ", ".join(repr(v) for v in self.vertices) + "]"


def figure(*coords: tuple[Scalar, Scalar]) -> ConvexFigure:
    """Build a figure from coordinate pairs: figure((0,0), (1,0), (0,1))."""
    return ConvexFigure(tuple(pt(x, y) for x, y in coords))


def convex_hull(points: Iterable[Point2]) -> Optional[ConvexFigure]:
    """Minimal convex figure containing the points; None for empty input."""
    cycle = _hull_cycle(points)
    if not cycle:
        return None
    return ConvexFigure(tuple(cycle))


def membership(fig: ConvexFigure, p: Point2, semantics: Semantics) -> bool:
    """Exact point-in-figure test.

    Closed: p in the figure as a closed set.  Open: p in the interior;
    points and segments have empty interior, so they never contain
    anything under open semantics.
    """
    verts = fig.vertices
    if semantics is Semantics.OPEN:
        if fig.dim < 2:
            return False
        return all(orientation(a, b, p) > 0 for a, b in fig.edges())
    if fig.dim == 2:
        return all(orientation(a, b, p) >= 0 for a, b in fig.edges())
    if fig.dim == 1:
        u, v = verts
        if orientation(u, v, p) != 0:
            return False
        return (
            min(u.x, v.x) <= p.x <= max(u.x, v.x)
            and min(u.y, v.y) <= p.y <= max(u.y, v.y)
        )
    return p == verts[0]


def _clip_inside(value: Fraction, keep: str) -> bool:
    return value <= 0 if keep == "le" else value >= 0


def clip_halfplane(
    fig: ConvexFigure, line: Line2, keep: str
) -> Optional[ConvexFigure]:
    """Intersect a figure with the closed halfplane a*x+b*y <= c (or >=).

    `keep` is "le" or "ge".  Returns None when the intersection is empty;
    degenerate results (edge, point) are returned as degenerate figures.
    """
    if keep not in ("le", "ge"):
        raise ValueError("keep must be 'le' or 'ge'")
    kept: list[Point2] = [
        v for v in fig.vertices if _clip_inside(line.eval_at(v), keep)
    ]
    for u, v in fig.edges():
        eu, ev = line.eval_at(u), line.eval_at(v)
        if (eu > 0 > ev) or (eu < 0 < ev):
            t = -eu / (ev - eu)
            kept.append(Point2(u.x + t * (v.x - u.x), u.y + t * (v.y - u.y)))
    return convex_hull(kept)


def halfplanes(fig: ConvexFigure) -> list[tuple[Line2, str]]:
    """A finite list of (line, keep) constraints whose intersection is fig.

    Degenerate figures are encoded with equality pairs (both sides of the
    supporting line) plus, for segments, perpendicular cutoffs at the ends.
    """
    verts = fig.vertices
    if fig.dim == 2:
        out = []
        k = len(verts)
        for i in range(k):
            u, v, w = verts[i], verts[(i + 1) % k], verts[(i + 2) % k]
            line = Line2.through(u, v)
            out.append((line, "le" if line.side(w) < 0 else "ge"))
        return out
    if fig.dim == 1:
        u, v = verts
        line = Line2.through(u, v)
        dx, dy = v.x - u.x, v.y - u.y
        cut_u = Line2.from_coeffs(dx, dy, dx * u.x + dy * u.y)
        cut_v = Line2.from_coeffs(dx, dy, dx * v.x + dy * v.y)
        return [
            (line, "le"),
            (line, "ge"),
            (cut_u, "le" if cut_u.side(v) < 0 else "ge"),
            (cut_v, "le" if cut_v.side(u) < 0 else "ge"),
        ]
    (p,) = verts
    vert = Line2.from_coeffs(Fraction(1), Fraction(0), p.x)
    horiz = Line2.from_coeffs(Fraction(0), Fraction(1), p.y)
    return [(vert, "le"), (vert, "ge"), (horiz, "le"), (horiz, "ge")]


def intersect_figures(
    f: ConvexFigure, g: ConvexFigure
) -> Optional[ConvexFigure]:
    """Exact closed intersection of two figures, possibly degenerate."""
    result: Optional[ConvexFigure] = f
    for line, keep in halfplanes(g):
        if result is None:
            return None
        result = clip_halfplane(result, line, keep)
    return result


def convex_difference_cells(
    f: ConvexFigure, g: ConvexFigure
) -> list[ConvexFigure]:
    """Convex cells whose union is the closure of f minus g.

    Splits f along the halfplane constraints of g: each cell is the part
    of f outside one constraint and inside all previous ones.  Cells may
    be degenerate (zero area) where f and g share boundary.
    """
    cells: list[ConvexFigure] = []
    remaining: Optional[ConvexFigure] = f
    for line, keep in halfplanes(g):
        if remaining is None:
            break
        flipped = "ge" if keep == "le" else "le"
        outside = clip_halfplane(remaining, line, flipped)
        if outside is not None:
            cells.append(outside)
        remaining = clip_halfplane(remaining, line, keep)
    return cells


def area(fig: ConvexFigure) -> Fraction:
    """Exact enclosed area (zero for degenerate figures)."""
    if fig.dim < 2:
        return Fraction(0)
    verts = fig.vertices
    twice = Fraction(0)
    for i, u in enumerate(verts):
        v = verts[(i + 1) % len(verts)]
        twice += u.x * v.y - v.x * u.y
    return twice / 2


def centroid(fig: ConvexFigure) -> Point2:
    """Exact centroid; for degenerate figures, the vertex average."""
    verts = fig.vertices
    if fig.dim < 2:
        k = len(verts)
        return Point2(
            sum((v.x for v in verts), Fraction(0)) / k,
            sum((v.y for v in verts), Fraction(0)) / k,
        )
    a6 = 6 * area(fig)
    cx = cy = Fraction(0)
    for i, u in enumerate(verts):
        v = verts[(i + 1) % len(verts)]
        w = u.x * v.y - v.x * u.y
        cx += (u.x + v.x) * w
        cy += (u.y + v.y) * w
    return Point2(cx / a6, cy / a6)


def on_segment(u: Point2, v: Point2, r: Point2) -> bool:
    """Whether r lies on the closed segment u-v (u = v allowed)."""
    if u == v:
        return r == u
    return (
        orientation(u, v, r) == 0
        and min(u.x, v.x) <= r.x <= max(u.x, v.x)
        and min(u.y, v.y) <= r.y <= max(u.y, v.y)
    )


def segment_intersections(
    p1: Point2, p2: Point2, q1: Point2, q2: Point2
) -> list[Point2]:
    """All "corner" points of the intersection of two closed segments.

    Returns [] when disjoint, a single point for a crossing or touch, and
    the two endpoints of the overlap for collinear overlapping segments.
    """
    if p1 == p2:
        return [p1] if on_segment(q1, q2, p1) else []
    if q1 == q2:
        return [q1] if on_segment(p1, p2, q1) else []
    d1 = orientation(q1, q2, p1)
    d2 = orientation(q1, q2, p2)
    d3 = orientation(p1, p2, q1)
    d4 = orientation(p1, p2, q2)
    if d1 == d2 == d3 == d4 == 0:
        # collinear: overlap is an interval in the parameter of p1->p2
        dx, dy = p2.x - p1.x, p2.y - p1.y
        den = dx * dx + dy * dy

        def param(r: Point2) -> Fraction:
            return (dx * (r.x - p1.x) + dy * (r.y - p1.y)) / den

        lo = max(Fraction(0), min(param(q1), param(q2)))
        hi = min(Fraction(1), max(param(q1), param(q2)))
        if lo > hi:
            return []
        p = Point2(p1.x + lo * dx, p1.y + lo * dy)
        q = Point2(p1.x + hi * dx, p1.y + hi * dy)
        return [p] if p == q else [p, q]
    if d1 * d2 > 0 or d3 * d4 > 0:
        return []
    cross = Line2.through(p1, p2).intersect(Line2.through(q1, q2))
    return [cross] if cross is not None else []
