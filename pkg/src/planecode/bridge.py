"""Reduction between open and closed realizations.

Replacing open figures by their closures can only create codewords whose
defining intersection has empty interior; those intersections live on
lines.  Pinning a triangle inside every open codeword's region and a
quadrilateral across every such line lets the closed-realization
minimizer run without disturbing the open code, after which taking
interiors recovers an open realization of the original code.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .codes import (
    Codeword,
    Realization,
    code_of,
    members_of,
    pattern_at,
    representatives_of,
)
from .geometry import (
    ConvexFigure,
    Line2,
    Point2,
    Semantics,
    centroid,
    clip_halfplane,
    halfplanes,
    intersect_figures,
    membership,
)
from .shrink import MinimizeResult, VerificationError, minimize, total_vertices


class DegenerateSetError(ValueError):
    """An open realization member has empty interior (a point or segment)."""


@dataclass(frozen=True)
class SigmaLine:
    """A line carrying a nonempty, empty-interior intersection of figures."""

    sigma: Codeword
    line: Line2


@dataclass
class ClosureCheck:
    word: Codeword
    intersection: Optional[ConvexFigure]
    empty_interior: bool


@dataclass
class ClosureReport:
    """Outcome of checking the closed-vs-open codeword gap.

    closed_only_words lists the codewords gained by taking closures; the
    check of each must find an empty-interior intersection, otherwise the
    geometry engine has a bug.
    """

    closed_only_words: tuple[Codeword, ...]
    checks: tuple[ClosureCheck, ...]
    degenerate_members: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(c.empty_interior for c in self.checks)

    @property
    def violations(self) -> tuple[ClosureCheck, ...]:
        return tuple(c for c in self.checks if not c.empty_interior)


@dataclass
class OpenReductionCertificate:
    points: tuple[Point2, ...]
    triangles: dict[Codeword, tuple[Point2, Point2, Point2]]
    quadrilaterals: dict[
        tuple[Codeword, int], tuple[Point2, Point2, Point2, Point2]
    ]
    sigma_lines: tuple[SigmaLine, ...]


@dataclass
class OpenMinimizeResult:
    realization: Realization
    certificate: OpenReductionCertificate
    closed_result: MinimizeResult
    vertices_before: int
    vertices_after: int
    total_vertex_bound: int
    meets_total_bound: bool


def closure_realization(opened: Realization) -> Realization:
    """The closed realization on the same vertex data."""
    if opened.semantics is not Semantics.OPEN:
        raise ValueError("expected an open realization")
    return opened.with_semantics(Semantics.CLOSED)


def degenerate_indices(real: Realization) -> tuple[int, ...]:
    return tuple(i for i, fig in enumerate(real.figures) if fig.dim < 2)


def _intersection_of(
    real: Realization, word: Codeword
) -> Optional[ConvexFigure]:
    figs = [real.figures[i] for i in members_of(word)]
    inter: Optional[ConvexFigure] = figs[0]
    for fig in figs[1:]:
        if inter is None:
            return None
        inter = intersect_figures(inter, fig)
    return inter


def check_empty_interior_lemma(opened: Realization) -> ClosureReport:
    """Verify that closure-only codewords come from flat intersections."""
    if opened.semantics is not Semantics.OPEN:
        raise ValueError("expected an open realization")
    closed = closure_realization(opened)
    gained = sorted(set(code_of(closed).words) - set(code_of(opened).words))
    checks = []
    for word in gained:
        inter = _intersection_of(closed, word)
        checks.append(
            ClosureCheck(word, inter, inter is None or inter.dim < 2)
        )
    return ClosureReport(
        tuple(gained), tuple(checks), degenerate_indices(opened)
    )


def _shrink_step(p: Point2, fig: ConvexFigure, bound: Fraction) -> Fraction:
    """Largest delta <= bound with p + delta*dir inside fig for the three
    triangle directions (1,0), (0,1), (-1,-1), at half slack."""
    delta = bound
    for line, keep in halfplanes(fig):
        a, b = Fraction(line.a), Fraction(line.b)
        slack = -line.eval_at(p) if keep == "le" else line.eval_at(p)
        if slack <= 0:
            raise ValueError(f"{p} is not interior to the figure")
        sign = 1 if keep == "le" else -1
        growth = max(sign * a, sign * b, sign * (-a - b))
        if growth > 0:
            delta = min(delta, slack / (2 * growth))
    return delta


def _line_chord(fig: ConvexFigure, line: Line2) -> Optional[ConvexFigure]:
    on_line = clip_halfplane(fig, line, "le")
    if on_line is None:
        return None
    return clip_halfplane(on_line, line, "ge")


def open_interval_on_line(
    fig: ConvexFigure, line: Line2
) -> Optional[tuple[Point2, Point2]]:
    """Endpoints of line ∩ interior(fig) as an open segment, or None."""
    chord = _line_chord(fig, line)
    if chord is None or chord.dim != 1:
        return None
    g, h = chord.vertices
    mid = Point2((g.x + h.x) / 2, (g.y + h.y) / 2)
    if not membership(fig, mid, Semantics.OPEN):
        return None
    return g, h


def build_open_representatives(
    opened: Realization,
) -> OpenReductionCertificate:
    """Pin points that make closed minimization safe for the open code.

    The point set contains representatives of the closure's code, one
    small triangle inside every open codeword's region, and one
    quadrilateral across every flat-intersection line within each figure
    it meets.  The total stays within 4*(n+1)*2^n points.
    """
    if opened.semantics is not Semantics.OPEN:
        raise ValueError("expected an open realization")
    bad = degenerate_indices(opened)
    if bad:
        raise DegenerateSetError(
            f"members {bad} have empty interior and denote the empty set"
        )
    closed = closure_realization(opened)
    n = opened.n

    points: dict[Point2, None] = {}

    def add(p: Point2) -> None:
        points.setdefault(p, None)

    for _w, p in representatives_of(closed):
        add(p)

    triangles: dict[Codeword, tuple[Point2, Point2, Point2]] = {}
    for word, rep in representatives_of(opened):
        delta = Fraction(1)
        for i in members_of(word):
            delta = _shrink_step(rep, closed.figures[i], delta)
        tri = (
            Point2(rep.x + delta, rep.y),
            Point2(rep.x, rep.y + delta),
            Point2(rep.x - delta, rep.y - delta),
        )
        triangles[word] = tri
        for q in tri:
            add(q)

    sigma_lines: list[SigmaLine] = []
    quads: dict[tuple[Codeword, int], tuple[Point2, Point2, Point2, Point2]] = {}
    for sigma in range(1, 1 << n):
        inter = _intersection_of(closed, sigma)
        if inter is None or inter.dim == 2:
            continue
        if inter.dim == 1:
            line = Line2.through(*inter.vertices)
        else:
            line = Line2.from_coeffs(
                Fraction(0), Fraction(1), inter.vertices[0].y
            )
        sigma_lines.append(SigmaLine(sigma, line))
        for i, fig in enumerate(closed.figures):
            interval = open_interval_on_line(fig, line)
            if interval is None:
                continue
            g, h = interval
            near = clip_halfplane(fig, line, "le")
            far = clip_halfplane(fig, line, "ge")
            assert near is not None and far is not None
            assert near.dim == 2 and far.dim == 2
            quad = (g, centroid(near), h, centroid(far))
            quads[(sigma, i)] = quad
            for q in quad:
                add(q)

    cert = OpenReductionCertificate(
        tuple(points), triangles, quads, tuple(sigma_lines)
    )
    limit = 4 * (n + 1) * 2 ** n
    assert len(cert.points) <= limit, "certificate exceeded its size bound"
    return cert


def certificate_violations(
    opened: Realization, cert: OpenReductionCertificate
) -> list[str]:
    """Machine check of every certificate promise; [] when all hold."""
    problems: list[str] = []
    closed = closure_realization(opened)
    for word, tri in cert.triangles.items():
        for q in tri:
            for i in members_of(word):
                if not membership(closed.figures[i], q, Semantics.OPEN):
                    problems.append(
                        f"triangle vertex {q} not inside open figure {i}"
                    )
        mid = Point2(
            sum((q.x for q in tri), Fraction(0)) / 3,
            sum((q.y for q in tri), Fraction(0)) / 3,
        )
        if pattern_at(opened, mid) != word:
            problems.append(f"triangle for word {word} lost its pattern")
    for (sigma, i), quad in cert.quadrilaterals.items():
        line = next(s.line for s in cert.sigma_lines if s.sigma == sigma)
        g, c1, h, c2 = quad
        chord = _line_chord(closed.figures[i], line)
        if chord is None or set(chord.vertices) != {g, h}:
            problems.append(f"quad ({sigma},{i}) diagonal is not the chord")
        if line.side(c1) * line.side(c2) != -1:
            problems.append(f"quad ({sigma},{i}) centroids not on both sides")
        for q in quad:
            if not membership(closed.figures[i], q, Semantics.CLOSED):
                problems.append(f"quad vertex {q} escapes figure {i}")
    rep_words = {pattern_at(closed, q) for q in cert.points}
    if rep_words != set(code_of(closed).words):
        problems.append("certificate points do not represent the closed code")
    if len(cert.points) > 4 * (opened.n + 1) * 2 ** opened.n:
        problems.append("certificate exceeds its size bound")
    return problems


def open_minimize(
    opened: Realization, budget: int = 10_000
) -> OpenMinimizeResult:
    """Minimize an open realization through its closure.

    Runs the closed minimizer pinned on the reduction certificate, takes
    interiors, and verifies both the open code and the per-line interval
    equality before returning.
    """
    cert = build_open_representatives(opened)
    closed = closure_realization(opened)
    base_code = code_of(opened)
    result = minimize(closed, list(cert.points), budget=budget)
    shrunk = result.realization.with_semantics(Semantics.OPEN)
    if code_of(shrunk) != base_code:
        raise VerificationError("open code changed under minimization")
    for sl in cert.sigma_lines:
        for i in range(opened.n):
            before = open_interval_on_line(opened.figures[i], sl.line)
            after = open_interval_on_line(shrunk.figures[i], sl.line)
            if before != after:
                raise VerificationError(
                    f"interval on sigma line {sl.sigma:b} changed in figure {i}"
                )
    n = opened.n
    bound = 4 * 6 ** n * factorial(n + 1)
    after_count = total_vertices(shrunk)
    return OpenMinimizeResult(
        realization=shrunk,
        certificate=cert,
        closed_result=result,
        vertices_before=total_vertices(opened),
        vertices_after=after_count,
        total_vertex_bound=bound,
        meets_total_bound=after_count <= bound,
    )
