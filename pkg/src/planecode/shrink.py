"""Code-preserving local moves and a verified greedy minimizer.

The moves: simplifying a figure near a boundary point, classifying
vertices as good / very good, finding good pairs, pulling a shared vertex
toward a twin point, and deleting redundant vertices.  `minimize`
composes them into a greedy descent; every accepted move is re-verified
against the full code and the pinned point set, so the output invariants
hold by construction rather than by trust in the move logic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Optional, Sequence

from .codes import (
    Code,
    Realization,
    code_of,
    pattern_at,
    representative_points,
)
from .geometry import (
    ConvexFigure,
    Point2,
    Semantics,
    area,
    clip_halfplane,
    convex_difference_cells,
    convex_hull,
    halfplanes,
    membership,
    on_segment,
    segment_intersections,
)


class BoundaryError(ValueError):
    """The anchor point is not on the boundary of the figure."""


class DisconnectedArcError(ValueError):
    """The neighbourhood boundary meets the figure in several components."""


class PullFailedError(RuntimeError):
    """No halving step produced a verified code-preserving pull."""


class VerificationError(RuntimeError):
    """A re-verification of code or pinned patterns failed."""


@dataclass(frozen=True)
class VertexRef:
    figure_index: int
    vertex_index: int
    location: Point2


@dataclass(frozen=True)
class GoodnessReport:
    good: bool
    very_good: bool
    witnesses: tuple[tuple[int, int], ...]  # (figure, edge) the point sits on


@dataclass(frozen=True)
class PullOutcome:
    new_realization: Realization
    epsilon_used: Fraction
    halvings: int


@dataclass(frozen=True)
class MinimizeResult:
    realization: Realization
    moves: tuple[str, ...]
    attempts: int
    budget_exhausted: bool
    vertices_before: int
    vertices_after: int
    per_figure_bound: int
    meets_vertex_bound: bool


def total_vertices(real: Realization) -> int:
    return sum(len(fig.vertices) for fig in real.figures)


def per_figure_vertex_bound(n: int, representatives: int) -> int:
    """Largest vertex count an irreducible figure may have: 3^n (n-1)! |P|."""
    return 3 ** n * factorial(n - 1) * representatives


def _on_boundary(fig: ConvexFigure, p: Point2) -> bool:
    if fig.dim < 2:
        return membership(fig, p, Semantics.CLOSED)
    return membership(fig, p, Semantics.CLOSED) and not membership(
        fig, p, Semantics.OPEN
    )


def _edge_chord(u: Point2, v: Point2, fig: ConvexFigure) -> Optional[tuple[Fraction, Fraction]]:
    """Parameter interval of {u + t(v-u) : t in [0,1]} inside fig, or None."""
    lo, hi = Fraction(0), Fraction(1)
    for line, keep in halfplanes(fig):
        eu, ev = line.eval_at(u), line.eval_at(v)
        if keep == "ge":
            eu, ev = -eu, -ev
        # constraint eu + t*(ev - eu) <= 0
        slope = ev - eu
        if slope == 0:
            if eu > 0:
                return None
            continue
        t = -eu / slope
        if slope > 0:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
        if lo > hi:
            return None
    return lo, hi


def boundary_arc_components(region: ConvexFigure, fig: ConvexFigure) -> int:
    """Number of connected components of (boundary of region) inside fig."""
    edges = list(region.edges())
    chords = [_edge_chord(u, v, fig) for u, v in edges]
    pieces = [i for i, ch in enumerate(chords) if ch is not None]
    if not pieces:
        return 0
    components = 0
    prev_connected = [False] * len(edges)
    for i in pieces:
        j = (i - 1) % len(edges)
        prev = chords[j]
        prev_connected[i] = (
            prev is not None and prev[1] == 1 and chords[i][0] == 0
        )
    for i in pieces:
        if not prev_connected[i]:
            components += 1
    if components == 0:
        return 1  # every piece glued to its predecessor: one full cycle
    return components


def simplify_at(C: ConvexFigure, p: Point2, B: ConvexFigure) -> ConvexFigure:
    """Replace C near the boundary point p by the cone construction.

    B is a convex polygon neighbourhood with p in its interior.  The
    result is the convex hull of {p} and the part of C outside the
    interior of B, which equals (C minus B) union the cone from p over
    the part of B's boundary inside C whenever that part is connected.
    """
    if not _on_boundary(C, p):
        raise BoundaryError(f"{p} is not on the boundary of the figure")
    if B.dim < 2 or not membership(B, p, Semantics.OPEN):
        raise ValueError("the neighbourhood must contain p in its interior")
    if boundary_arc_components(B, C) > 1:
        raise DisconnectedArcError(
            "the neighbourhood boundary meets the figure in several pieces"
        )
    points = [p]
    points.extend(
        v for v in C.vertices if not membership(B, v, Semantics.OPEN)
    )
    for cu, cv in C.edges():
        for bu, bv in B.edges():
            points.extend(segment_intersections(cu, cv, bu, bv))
    result = convex_hull(points)
    assert result is not None
    return result


def simplify_at_by_union(
    C: ConvexFigure, p: Point2, B: ConvexFigure
) -> ConvexFigure:
    """The same simplification assembled from its defining region pieces.

    Builds the region as explicit convex pieces: the parts of C beyond
    each edge of B, plus the fan of triangles from p over the boundary
    arc of B inside C.  The convex hull of the piece vertices is then
    certified to add nothing, by an exact zero-area check of hull minus
    pieces.  Serves as an independent cross-check of `simplify_at`.
    """
    if not _on_boundary(C, p):
        raise BoundaryError(f"{p} is not on the boundary of the figure")
    if B.dim < 2 or not membership(B, p, Semantics.OPEN):
        raise ValueError("the neighbourhood must contain p in its interior")
    if boundary_arc_components(B, C) > 1:
        raise DisconnectedArcError(
            "the neighbourhood boundary meets the figure in several pieces"
        )
    pieces: list[ConvexFigure] = []
    for line, keep in halfplanes(B):
        flipped = "ge" if keep == "le" else "le"
        outer = clip_halfplane(C, line, flipped)
        if outer is not None:
            pieces.append(outer)
    for bu, bv in B.edges():
        chord = _edge_chord(bu, bv, C)
        if chord is None:
            continue
        lo, hi = chord
        a = Point2(bu.x + lo * (bv.x - bu.x), bu.y + lo * (bv.y - bu.y))
        b = Point2(bu.x + hi * (bv.x - bu.x), bu.y + hi * (bv.y - bu.y))
        fan = convex_hull([p, a, b])
        assert fan is not None
        pieces.append(fan)
    hull = convex_hull([v for piece in pieces for v in piece.vertices] + [p])
    assert hull is not None
    _certify_union_equals(hull, pieces, p)
    return hull


def _certify_union_equals(
    hull: ConvexFigure, pieces: Sequence[ConvexFigure], p: Point2
) -> None:
    """Exact check that the convex hull adds nothing to the piece union."""
    if hull.dim == 2:
        cells = [hull]
        for piece in pieces:
            cells = [
                sub for cell in cells for sub in convex_difference_cells(cell, piece)
            ]
        leftover = sum((area(cell) for cell in cells), Fraction(0))
        if leftover != 0:
            raise VerificationError(
                f"union construction is not convex: uncovered area {leftover}"
            )
        return
    # degenerate hull: check 1D coverage directly
    if hull.dim == 0:
        covered = hull.vertices[0] == p or any(
            membership(piece, hull.vertices[0], Semantics.CLOSED)
            for piece in pieces
        )
        if not covered:
            raise VerificationError("hull point not covered by pieces")
        return
    u, v = hull.vertices
    intervals = []
    if p == u or p == v or on_segment(u, v, p):
        den = (v.x - u.x) ** 2 + (v.y - u.y) ** 2
        t = ((v.x - u.x) * (p.x - u.x) + (v.y - u.y) * (p.y - u.y)) / den
        intervals.append((t, t))
    for piece in pieces:
        ch = _edge_chord(u, v, piece)
        if ch is not None:
            intervals.append(ch)
    intervals.sort()
    reach = Fraction(0)
    for lo, hi in intervals:
        if lo > reach:
            raise VerificationError("hull segment not covered by pieces")
        reach = max(reach, hi)
    if reach < 1:
        raise VerificationError("hull segment not covered by pieces")


def classify_vertex(
    real: Realization, p: Point2, pivot: int
) -> GoodnessReport:
    """Good: p lies on no open edge of any figure.

    Very good additionally requires that p avoids the pivot figure except
    at the pivot figure's vertices.  Edges exclude their endpoints, so
    polygon vertices are never disqualified by their own edges.
    """
    if real.semantics is not Semantics.CLOSED:
        raise ValueError("vertex goodness is defined for closed realizations")
    if not 0 <= pivot < real.n:
        raise ValueError("pivot out of range")
    witnesses = []
    for i, fig in enumerate(real.figures):
        for j, (u, v) in enumerate(fig.edges()):
            if p != u and p != v and on_segment(u, v, p):
                witnesses.append((i, j))
    good = not witnesses
    pivot_fig = real.figures[pivot]
    very_good = good and not (
        membership(pivot_fig, p, Semantics.CLOSED)
        and p not in pivot_fig.vertices
    )
    return GoodnessReport(good, very_good, tuple(witnesses))


def _good_pairs(
    real: Realization, pinned: Sequence[Point2]
) -> Iterator[tuple[VertexRef, Point2]]:
    """Candidate (vertex, twin) pairs in deterministic preference order."""
    pinned_set = set(pinned)
    good_cache: dict[Point2, bool] = {}

    def is_good(q: Point2) -> bool:
        if q not in good_cache:
            good_cache[q] = classify_vertex(real, q, 0).good
        return good_cache[q]

    refs = [
        VertexRef(i, k, v)
        for i, fig in enumerate(real.figures)
        for k, v in enumerate(fig.vertices)
    ]
    vertex_locs = sorted({r.location for r in refs})
    good_vertices = [
        q for q in vertex_locs if q not in pinned_set and is_good(q)
    ]
    pool = [
        q
        for q in sorted(set(representative_points(real)))
        if q not in pinned_set and q not in vertex_locs and is_good(q)
    ]
    for ref in refs:
        v = ref.location
        if v in pinned_set or not is_good(v):
            continue
        pattern = pattern_at(real, v)
        for twin in good_vertices:
            if twin != v and pattern_at(real, twin) == pattern:
                yield ref, twin
        for twin in pool:
            if pattern_at(real, twin) == pattern:
                yield ref, twin


def find_good_pair(
    real: Realization, pinned: Sequence[Point2]
) -> Optional[tuple[VertexRef, Point2]]:
    """First good pair (v vertex, v' twin): both good, unpinned, distinct,
    with equal membership patterns; None when the candidate search is
    exhausted."""
    if real.semantics is not Semantics.CLOSED:
        raise ValueError("good pairs are defined for closed realizations")
    return next(_good_pairs(real, pinned), None)


def pull_vertex(
    real: Realization,
    v: Point2,
    v_prime: Point2,
    pinned: Sequence[Point2],
    max_halvings: int = 32,
) -> PullOutcome:
    """Move vertex v toward v_prime by the largest verified halving step.

    Every figure having v as a vertex gets v replaced by v + eps*(v'-v);
    the first eps in 1/2, 1/4, ... for which all modified figures stay
    strictly convex, the code is unchanged and every pinned pattern is
    unchanged wins.
    """
    if real.semantics is not Semantics.CLOSED:
        raise ValueError("pulling is defined for closed realizations")
    if v == v_prime:
        raise ValueError("pull target must differ from the vertex")
    owners = [i for i, fig in enumerate(real.figures) if v in fig.vertices]
    if not owners:
        raise ValueError(f"{v} is not a vertex of any figure")
    if v in pinned or v_prime in pinned:
        raise ValueError("pull endpoints must avoid the pinned points")
    if pattern_at(real, v) != pattern_at(real, v_prime):
        raise ValueError("pull endpoints must have equal patterns")

    base_code = code_of(real)
    base_pins = [pattern_at(real, q) for q in pinned]
    eps = Fraction(1, 2)
    for halvings in range(max_halvings):
        moved = Point2(
            v.x + eps * (v_prime.x - v.x), v.y + eps * (v_prime.y - v.y)
        )
        candidate = _replace_vertex(real, owners, v, moved)
        if candidate is not None and _preserves(
            candidate, base_code, pinned, base_pins
        ):
            return PullOutcome(candidate, eps, halvings)
        eps /= 2
    raise PullFailedError(
        f"no verified step toward {v_prime} within {max_halvings} halvings"
    )


def _replace_vertex(
    real: Realization, owners: Sequence[int], old: Point2, new: Point2
) -> Optional[Realization]:
    current = real
    for i in owners:
        verts = [new if q == old else q for q in current.figures[i].vertices]
        if len(set(verts)) != len(verts):
            return None
        try:
            fig = ConvexFigure(tuple(verts))
        except ValueError:
            return None
        if len(fig.vertices) != len(verts):
            return None
        current = current.with_figure(i, fig)
    return current


def _preserves(
    candidate: Realization,
    base_code: Code,
    pinned: Sequence[Point2],
    base_pins: Sequence[int],
) -> bool:
    if any(
        pattern_at(candidate, q) != w for q, w in zip(pinned, base_pins)
    ):
        return False
    return code_of(candidate) == base_code


def remove_vertex_if_redundant(
    real: Realization, ref: VertexRef, pinned: Sequence[Point2]
) -> Optional[Realization]:
    """Delete one vertex if the code and pinned patterns survive it."""
    if real.semantics is not Semantics.CLOSED:
        raise ValueError("removal is defined for closed realizations")
    fig = real.figures[ref.figure_index]
    if fig.vertices[ref.vertex_index] != ref.location:
        raise ValueError("stale vertex reference")
    if len(fig.vertices) == 1:
        return None
    remaining = tuple(
        q for k, q in enumerate(fig.vertices) if k != ref.vertex_index
    )
    candidate = real.with_figure(ref.figure_index, ConvexFigure(remaining))
    base_code = code_of(real)
    base_pins = [pattern_at(real, q) for q in pinned]
    if _preserves(candidate, base_code, pinned, base_pins):
        return candidate
    return None


def minimize(
    real: Realization,
    pinned: Sequence[Point2],
    budget: int = 10_000,
    max_halvings: int = 32,
) -> MinimizeResult:
    """Greedy descent: removal sweeps alternated with good-pair pulls.

    A pull is kept only when the following removal sweep deletes at least
    one vertex, so the total vertex count strictly decreases every round
    and the loop terminates.  The output is re-verified to be figurewise
    contained in the input with the same code and pinned patterns.
    """
    if real.semantics is not Semantics.CLOSED:
        raise ValueError("minimize is defined for closed realizations")
    base_code = code_of(real)
    base_pins = [pattern_at(real, q) for q in pinned]
    if {pattern_at(real, q) for q in pinned} != set(base_code.words):
        raise ValueError("the pinned points must represent every codeword")

    current = real
    moves: list[str] = []
    attempts = 0
    exhausted = False

    def sweep(state: Realization) -> tuple[Realization, int]:
        nonlocal attempts, exhausted
        removed = 0
        changed = True
        while changed:
            changed = False
            for i in range(state.n):
                k = 0
                while k < len(state.figures[i].vertices):
                    if attempts >= budget:
                        exhausted = True
                        return state, removed
                    attempts += 1
                    ref = VertexRef(i, k, state.figures[i].vertices[k])
                    cand = remove_vertex_if_redundant(state, ref, pinned)
                    if cand is None:
                        k += 1
                    else:
                        state = cand
                        removed += 1
                        changed = True
                        moves.append(f"remove figure {i} vertex {ref.location}")
        return state, removed

    current, _ = sweep(current)
    while not exhausted:
        progressed = False
        for ref, twin in _good_pairs(current, pinned):
            if attempts >= budget:
                exhausted = True
                break
            attempts += 1
            try:
                pulled = pull_vertex(
                    current, ref.location, twin, pinned, max_halvings
                )
            except PullFailedError:
                continue
            after, removed = sweep(pulled.new_realization)
            if removed:
                moves.append(
                    f"pull {ref.location} toward {twin} "
                    f"(eps={pulled.epsilon_used})"
                )
                current = after
                progressed = True
                break
        if not progressed:
            break

    _verify_shrunk(real, current, pinned, base_code, base_pins)
    bound = per_figure_vertex_bound(real.n, len(pinned))
    return MinimizeResult(
        realization=current,
        moves=tuple(moves),
        attempts=attempts,
        budget_exhausted=exhausted,
        vertices_before=total_vertices(real),
        vertices_after=total_vertices(current),
        per_figure_bound=bound,
        meets_vertex_bound=all(
            len(fig.vertices) <= bound for fig in current.figures
        ),
    )


def _verify_shrunk(
    before: Realization,
    after: Realization,
    pinned: Sequence[Point2],
    base_code: Code,
    base_pins: Sequence[int],
) -> None:
    for old, new in zip(before.figures, after.figures):
        for q in new.vertices:
            if not membership(old, q, Semantics.CLOSED):
                raise VerificationError(
                    f"output vertex {q} escapes its input figure"
                )
    if code_of(after) != base_code:
        raise VerificationError("output code differs from input code")
    for q, w in zip(pinned, base_pins):
        if pattern_at(after, q) != w:
            raise VerificationError(f"pattern at pinned point {q} changed")
