"""Realizability bounds, first-order sentence emission, and solver client.

A code admits a closed realization by polygons within an explicit vertex
budget, so realizability is equivalent to a sentence over the ordered
field of reals: there exist halfplane coefficients realizing exactly the
given membership patterns, with every figure bounded.  The sentence is
rendered in SMT-LIB 2 for quantified nonlinear real arithmetic and can
be handed to any external solver.
"""
from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass
from enum import Enum
from math import factorial
from typing import Optional, Sequence, Union

from .codes import Code, Codeword
from .geometry import Semantics

SOLVER_ENV_VAR = "PLANECODE_SOLVER"


class MissingEmptyWord(ValueError):
    """The empty codeword is missing: bounded figures always produce it."""


@dataclass(frozen=True)
class VertexBudget:
    """Vertex counts sufficient for a minimal polygonal realization."""

    n: int
    semantics: Semantics
    per_polygon: int
    total: int


def vertex_bound(n: int, semantics: Semantics) -> VertexBudget:
    """Exact vertex budgets: 6^n*n! total closed, 4*6^n*(n+1)! total open."""
    if n < 1:
        raise ValueError("n must be positive")
    semantics = Semantics(semantics)
    if semantics is Semantics.CLOSED:
        per = 3 ** n * factorial(n - 1) * 2 ** n
        total = 6 ** n * factorial(n)
    else:
        per = 3 ** n * factorial(n - 1) * 4 * (n + 1) * 2 ** n
        total = 4 * 6 ** n * factorial(n + 1)
    return VertexBudget(n, semantics, per, total)


# ---------------------------------------------------------------------------
# Formula AST.


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Add:
    terms: tuple["Term", ...]


@dataclass(frozen=True)
class Mul:
    terms: tuple["Term", ...]


Term = Union[Var, Const, Add, Mul]


@dataclass(frozen=True)
class Cmp:
    op: str  # one of <=, <, >=, >, =
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    items: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    premise: "Formula"
    conclusion: "Formula"


@dataclass(frozen=True)
class Exists:
    variables: tuple[str, ...]
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    variables: tuple[str, ...]
    body: "Formula"


Formula = Union[Cmp, Not, And, Implies, Exists, Forall]


@dataclass(frozen=True)
class Sentence:
    """The realizability sentence for a code with N halfplanes per figure.

    One boundedness conjunct per figure, one positive pattern conjunct
    per codeword, one negated conjunct per absent word; all under a
    single existential block of 3*n*N halfplane coefficients.
    """

    n: int
    halfplanes: int
    code: Code
    semantics: Semantics
    coefficient_variables: tuple[str, ...]
    gammas: tuple[Formula, ...]
    positives: tuple[tuple[Codeword, Formula], ...]
    negatives: tuple[tuple[Codeword, Formula], ...]

    @property
    def body(self) -> Formula:
        conjuncts = (
            list(self.gammas)
            + [f for _w, f in self.positives]
            + [Not(f) for _w, f in self.negatives]
        )
        return Exists(self.coefficient_variables, And(tuple(conjuncts)))


def _figure_membership(i: int, halfplanes: int, strict: bool) -> Formula:
    """All-halfplanes membership of (x, y) in figure i."""
    op = "<" if strict else "<="
    rows = []
    for j in range(1, halfplanes + 1):
        lhs = Add(
            (
                Mul((Var(f"a_{i}_{j}"), Var("x"))),
                Mul((Var(f"b_{i}_{j}"), Var("y"))),
            )
        )
        rows.append(Cmp(op, lhs, Var(f"c_{i}_{j}")))
    return And(tuple(rows))


def emit_sentence(code: Code, halfplanes: int, semantics: Semantics) -> Sentence:
    """Build the realizability sentence for `code`.

    Open semantics uses strict halfplane atoms throughout; closed uses
    non-strict ones, including the radius guard of the boundedness
    conjuncts, so each emission is uniform in atom strictness.
    """
    semantics = Semantics(semantics)
    if 0 not in code.words:
        raise MissingEmptyWord(
            "the empty codeword is required: bounded figures always miss "
            "some point"
        )
    if halfplanes < 3:
        raise ValueError("at least 3 halfplanes per figure are required")
    n = code.n
    strict = semantics is Semantics.OPEN

    coeffs = tuple(
        f"{letter}_{i}_{j}"
        for i in range(1, n + 1)
        for j in range(1, halfplanes + 1)
        for letter in ("a", "b", "c")
    )

    gammas = []
    radius_op = ">" if strict else ">="
    for i in range(1, n + 1):
        norm = Add((Mul((Var("x"), Var("x"))), Mul((Var("y"), Var("y")))))
        guard = Cmp(radius_op, norm, Var("r"))
        gammas.append(
            Exists(
                ("r",),
                Forall(
                    ("x", "y"),
                    Implies(guard, Not(_figure_membership(i, halfplanes, strict))),
                ),
            )
        )

    def pattern_formula(word: Codeword) -> Formula:
        parts: list[Formula] = []
        for i in range(1, n + 1):
            psi = _figure_membership(i, halfplanes, strict)
            parts.append(psi if word & (1 << (i - 1)) else Not(psi))
        return Exists(("x", "y"), And(tuple(parts)))

    positives = tuple(
        (w, pattern_formula(w)) for w in sorted(code.words)
    )
    negatives = tuple(
        (w, pattern_formula(w))
        for w in range(1 << n)
        if w not in code.words
    )
    return Sentence(
        n, halfplanes, code, semantics, coeffs, tuple(gammas), positives, negatives
    )


# ---------------------------------------------------------------------------
# SMT-LIB rendering and the structural parser used for round-trip tests.

Sexpr = Union[str, list]


def _term_sexpr(t: Term) -> Sexpr:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Add):
        return ["+"] + [_term_sexpr(x) for x in t.terms]
    if isinstance(t, Mul):
        return ["*"] + [_term_sexpr(x) for x in t.terms]
    raise TypeError(f"not a term: {t!r}")


def _formula_sexpr(f: Formula) -> Sexpr:
    if isinstance(f, Cmp):
        return [f.op, _term_sexpr(f.lhs), _term_sexpr(f.rhs)]
    if isinstance(f, Not):
        return ["not", _formula_sexpr(f.body)]
    if isinstance(f, And):
        return ["and"] + [_formula_sexpr(x) for x in f.items]
    if isinstance(f, Implies):
        return ["=>", _formula_sexpr(f.premise), _formula_sexpr(f.conclusion)]
    if isinstance(f, (Exists, Forall)):
        head = "exists" if isinstance(f, Exists) else "forall"
        binders = [[v, "Real"] for v in f.variables]
        return [head, binders, _formula_sexpr(f.body)]
    raise TypeError(f"not a formula: {f!r}")


def sentence_sexprs(sentence: Sentence) -> list[Sexpr]:
    """The full solver script as parsed s-expressions."""
    return [
        ["set-logic", "NRA"],
        ["assert", _formula_sexpr(sentence.body)],
        ["check-sat"],
    ]


def _write_sexpr(s: Sexpr) -> str:
    if isinstance(s, str):
        return s
    return "(" + " ".join(_write_sexpr(x) for x in s) + ")"


def render_smt(sentence: Sentence) -> str:
    """Deterministic SMT-LIB 2 text for the sentence (LF line endings)."""
    return "\n".join(_write_sexpr(s) for s in sentence_sexprs(sentence)) + "\n"


def parse_sexprs(text: str) -> list[Sexpr]:
    """Parse SMT-LIB-style s-expressions back into nested lists."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    stack: list[list] = [[]]
    for tok in tokens:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise ValueError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise ValueError("unbalanced '('")
    return stack[0]


# ---------------------------------------------------------------------------
# External solver client.


class SolveStatus(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"
    SOLVER_ERROR = "solver_error"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    detail: str = ""


def default_solver_command() -> Optional[str]:
    return os.environ.get(SOLVER_ENV_VAR) or None


def solve_external(
    text: str, solver_command: str, timeout: float = 60.0
) -> SolveResult:
    """Run an external solver on the rendered sentence.

    The command is split shell-style; a literal `{file}` placeholder is
    replaced by the path of a temp file holding the text, otherwise the
    text is fed on stdin.  The verdict is the first output line, one of
    sat / unsat / unknown; anything else is a solver error.  A timeout
    yields unknown.
    """
    argv = shlex.split(solver_command)
    if not argv:
        return SolveResult(SolveStatus.SOLVER_ERROR, "empty solver command")
    tmp_path: Optional[str] = None
    try:
        if any("{file}" in a for a in argv):
            fd, tmp_path = tempfile.mkstemp(suffix=".smt2", text=True)
            with os.fdopen(fd, "w") as handle:
                handle.write(text)
            argv = [a.replace("{file}", tmp_path) for a in argv]
            stdin = None
        else:
            stdin = text
        try:
            proc = subprocess.run(
                argv,
                input=stdin,
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except subprocess.TimeoutExpired:
            return SolveResult(SolveStatus.UNKNOWN, f"timeout after {timeout}s")
        except OSError as exc:
            return SolveResult(SolveStatus.SOLVER_ERROR, str(exc))
        first = proc.stdout.split("\n", 1)[0].strip() if proc.stdout else ""
        if first in ("sat", "unsat", "unknown"):
            return SolveResult(SolveStatus(first))
        detail = f"exit {proc.returncode}; output {first!r}"
        if proc.stderr:
            detail += f"; stderr {proc.stderr.strip()[:200]!r}"
        return SolveResult(SolveStatus.SOLVER_ERROR, detail)
    finally:
        if tmp_path is not None:
            try:
                os.unlink(tmp_path)
            except OSError:
                pass
