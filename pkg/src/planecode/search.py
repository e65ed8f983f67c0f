"""Exhaustive realization search over small grids.

An independent desk-scale oracle: enumerate tuples of convex figures
with vertices on {0..g}^2 in a fixed canonical order, prune with exact
necessary conditions, and return the first tuple whose code matches.
Because the enumeration is exhaustive up to translation, a None result
means no realization exists within the searched family.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .codes import Code, Realization, _scale_figure, code_of
from .geometry import ConvexFigure, Semantics, pt


@dataclass(frozen=True)
class _Cand:
    """A grid figure with integer rows for fast exact membership tests."""

    fig: ConvexFigure
    box: tuple[int, int, int, int]
    verts: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int, int, int], ...]
    rows: tuple[tuple[int, int, int], ...]  # a*x + b*y - c <= 0 inside

    def contains(self, x: int, y: int) -> bool:
        return all(a * x + b * y <= c for a, b, c in self.rows)


def _grid_figures(grid: int, max_vertices: int) -> list[_Cand]:
    """All figures with vertices on the grid, smallest first."""
    points = sorted(pt(x, y) for x in range(grid + 1) for y in range(grid + 1))
    out = []
    for size in range(1, max_vertices + 1):
        for verts in combinations(points, size):
            try:
                fig = ConvexFigure(verts)
            except ValueError:
                continue
            ints = tuple((int(v.x), int(v.y)) for v in fig.vertices)
            xs = [x for x, _ in ints]
            ys = [y for _, y in ints]
            edges = tuple(
                (ux, uy, vx, vy)
                for (ux, uy), (vx, vy) in (
                    ((u.x, u.y), (v.x, v.y)) for u, v in fig.edges()
                )
            )
            out.append(
                _Cand(
                    fig,
                    (min(xs), min(ys), max(xs), max(ys)),
                    ints,
                    edges,
                    _scale_figure(fig, 1).rows,
                )
            )
    out.sort(key=lambda c: (len(c.fig.vertices), c.fig.vertices))
    return out


def _contains(outer: _Cand, inner: _Cand) -> bool:
    return all(outer.contains(x, y) for x, y in inner.verts)


def _orient(ax: int, ay: int, bx: int, by: int, cx: int, cy: int) -> int:
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


def _on_box(ax: int, ay: int, bx: int, by: int, px: int, py: int) -> bool:
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def _segments_touch(
    p: tuple[int, int, int, int], q: tuple[int, int, int, int]
) -> bool:
    """Whether two closed integer segments share any point."""
    ax, ay, bx, by = p
    cx, cy, dx, dy = q
    d1 = _orient(cx, cy, dx, dy, ax, ay)
    d2 = _orient(cx, cy, dx, dy, bx, by)
    d3 = _orient(ax, ay, bx, by, cx, cy)
    d4 = _orient(ax, ay, bx, by, dx, dy)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _on_box(cx, cy, dx, dy, ax, ay):
        return True
    if d2 == 0 and _on_box(cx, cy, dx, dy, bx, by):
        return True
    if d3 == 0 and _on_box(ax, ay, bx, by, cx, cy):
        return True
    if d4 == 0 and _on_box(ax, ay, bx, by, dx, dy):
        return True
    return False


def _intersects(f: _Cand, g: _Cand) -> bool:
    """Exact intersection test: vertex containment or boundary crossing."""
    if f.box[0] > g.box[2] or g.box[0] > f.box[2]:
        return False
    if f.box[1] > g.box[3] or g.box[1] > f.box[3]:
        return False
    if any(g.contains(x, y) for x, y in f.verts):
        return True
    if any(f.contains(x, y) for x, y in g.verts):
        return True
    # convex sets that intersect without containing each other's vertices
    # must have touching boundaries
    return any(
        _segments_touch(ef, eg) for ef in f.edges for eg in g.edges
    )


class _PairRules:
    """Exact necessary conditions on each figure pair, derived from the code.

    Figures i and k must intersect iff some word contains both, and
    figure i must be contained in figure k iff no word has i without k.
    """

    def __init__(self, code: Code):
        n = code.n
        self.must_intersect = [[False] * n for _ in range(n)]
        self.must_subset = [[True] * n for _ in range(n)]
        for w in code.words:
            for i in range(n):
                if not w & (1 << i):
                    continue
                for k in range(n):
                    if i == k:
                        continue
                    if w & (1 << k):
                        self.must_intersect[i][k] = True
                    else:
                        self.must_subset[i][k] = False

    def admissible(self, cands: Sequence[_Cand], k: int) -> bool:
        for i in range(k):
            if self.must_subset[i][k] != _contains(cands[k], cands[i]):
                return False
            if self.must_subset[k][i] != _contains(cands[i], cands[k]):
                return False
            if self.must_intersect[i][k] != _intersects(cands[i], cands[k]):
                return False
        return True


def search_realization(
    code: Code, grid: int, max_vertices: int
) -> Optional[Realization]:
    """First grid realization of the code in canonical enumeration order.

    Tuples are enumerated ordered (realizations are ordered tuples),
    deduplicated under translation by anchoring the joint bounding box at
    the origin.  Prefix tuples are pruned exactly: the code of the first
    k figures must equal the projection of the target code onto them.
    Returns None when the finite family holds no realization.
    """
    if code.n > 3:
        raise ValueError("exhaustive search is limited to n <= 3")
    if 0 not in code.words:
        raise ValueError("the empty codeword must be present")
    candidates = _grid_figures(grid, max_vertices)
    rules = _PairRules(code)
    projections = [
        frozenset(w & ((1 << k) - 1) for w in code.words)
        for k in range(code.n + 1)
    ]

    chosen: list[_Cand] = []

    def extend() -> Optional[Realization]:
        depth = len(chosen)
        if depth == code.n:
            if min(c.box[0] for c in chosen) or min(c.box[1] for c in chosen):
                return None  # not the translation-canonical copy
            real = Realization(Semantics.CLOSED, tuple(c.fig for c in chosen))
            if code_of(real) == code:
                return real
            return None
        for cand in candidates:
            chosen.append(cand)
            if rules.admissible(chosen, depth):
                partial = Realization(
                    Semantics.CLOSED, tuple(c.fig for c in chosen)
                )
                if set(code_of(partial).words) == projections[depth + 1]:
                    found = extend()
                    if found is not None:
                        return found
            chosen.pop()
        return None

    return extend()
