"""JSON documents for realizations and codes, with exact rationals.

Coordinates serialize as strings like "3/7" or "2", never floats, so a
parse/serialize round trip reproduces the canonical realization bit for
bit.  Codeword members are 1-based labels in files and 0-based bits in
memory.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .codes import Code, Codeword, Realization, members_of, word_of
from .geometry import ConvexFigure, Point2, Semantics


class DocumentError(ValueError):
    """Malformed document text or structure."""


class InvalidFigureError(ValueError):
    """Document parsed but a vertex list is not a valid convex figure."""


def _fraction_str(value: Fraction) -> str:
    return str(value)


def _parse_fraction(raw: Any, where: str) -> Fraction:
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"bad rational {raw!r} in {where}") from exc
    if isinstance(raw, int):
        return Fraction(raw)
    raise DocumentError(f"rational must be a string or integer in {where}")


def realization_to_dict(real: Realization) -> dict:
    return {
        "semantics": real.semantics.value,
        "sets": [
            {
                "label": i + 1,
                "vertices": [
                    [_fraction_str(v.x), _fraction_str(v.y)]
                    for v in fig.vertices
                ],
            }
            for i, fig in enumerate(real.figures)
        ],
    }


def realization_from_dict(obj: Any) -> Realization:
    if not isinstance(obj, dict):
        raise DocumentError("realization document must be a JSON object")
    try:
        semantics = Semantics(obj["semantics"])
    except (KeyError, ValueError) as exc:
        raise DocumentError("semantics must be 'closed' or 'open'") from exc
    sets = obj.get("sets")
    if not isinstance(sets, list) or not sets:
        raise DocumentError("'sets' must be a non-empty list")
    figures = []
    for k, entry in enumerate(sets):
        if not isinstance(entry, dict):
            raise DocumentError(f"set {k} must be an object")
        if entry.get("label") != k + 1:
            raise DocumentError(f"labels must be 1..n in order; set {k} is off")
        raw_verts = entry.get("vertices")
        if not isinstance(raw_verts, list) or not raw_verts:
            raise DocumentError(f"set {k + 1} needs a non-empty vertex list")
        points = []
        for raw in raw_verts:
            if not isinstance(raw, (list, tuple)) or len(raw) != 2:
                raise DocumentError(
                    f"set {k + 1}: each vertex is a [x, y] pair"
                )
            where = f"set {k + 1}"
            points.append(
                Point2(
                    _parse_fraction(raw[0], where),
                    _parse_fraction(raw[1], where),
                )
            )
        try:
            figures.append(ConvexFigure(tuple(points)))
        except ValueError as exc:
            raise InvalidFigureError(f"set {k + 1}: {exc}") from exc
    return Realization(semantics, tuple(figures))


def dump_realization(real: Realization) -> str:
    return json.dumps(realization_to_dict(real), indent=2) + "\n"


def load_realization(text: str) -> Realization:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return realization_from_dict(obj)


def code_to_dict(code: Code) -> dict:
    return {
        "n": code.n,
        "codewords": [
            [i + 1 for i in members_of(w)] for w in code.sorted_words()
        ],
    }


def code_from_dict(obj: Any) -> Code:
    if not isinstance(obj, dict):
        raise DocumentError("code document must be a JSON object")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise DocumentError("'n' must be a positive integer")
    raw_words = obj.get("codewords")
    if not isinstance(raw_words, list):
        raise DocumentError("'codewords' must be a list of member lists")
    words = set()
    for raw in raw_words:
        if not isinstance(raw, list):
            raise DocumentError("each codeword is a list of labels")
        for label in raw:
            if not isinstance(label, int) or not 1 <= label <= n:
                raise DocumentError(f"label {label!r} outside 1..{n}")
        if len(set(raw)) != len(raw):
            raise DocumentError(f"codeword {raw} repeats a label")
        words.add(word_of(label - 1 for label in raw))
    return Code(n, frozenset(words))


def dump_code(code: Code) -> str:
    return json.dumps(code_to_dict(code), indent=2) + "\n"


def load_code(text: str) -> Code:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return code_from_dict(obj)


def word_label(word: Codeword) -> str:
    """Human-readable codeword: '{}' or '{1,3}'."""
    return "{" + ",".join(str(i + 1) for i in members_of(word)) + "}"
