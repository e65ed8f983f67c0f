"""Command-line interface: code, minimize, decide, render, bounds,
bridge-check, gen."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Optional

from .bridge import (
    DegenerateSetError,
    check_empty_interior_lemma,
    open_minimize,
)
from .codes import OversizeError, Realization, code_of, representatives_of
from .decide import (
    MissingEmptyWord,
    SolveStatus,
    default_solver_command,
    emit_sentence,
    render_smt,
    solve_external,
    vertex_bound,
)
from .documents import (
    DocumentError,
    InvalidFigureError,
    dump_code,
    dump_realization,
    load_code,
    load_realization,
    word_label,
)
from .generate import random_realization
from .geometry import Semantics
from .search import search_realization
from .shrink import VerificationError, minimize
from .svg import render_svg

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_VERIFY = 4
EXIT_SOLVER = 5
EXIT_IO = 6


class CliError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO)


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO)


def _load_realization(path: str) -> Realization:
    text = _read(path)
    try:
        return load_realization(text)
    except InvalidFigureError as exc:
        raise CliError(f"invalid figure: {exc}", EXIT_INVALID)
    except DocumentError as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE)


def _load_code(path: str):
    text = _read(path)
    try:
        return load_code(text)
    except DocumentError as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE)


def _reps_table(real: Realization) -> str:
    rows = ["codeword\tx\ty"]
    for word, p in representatives_of(real):
        rows.append(f"{word_label(word)}\t{p.x}\t{p.y}")
    return "\n".join(rows) + "\n"


def _figures_dir(path: str) -> Path:
    directory = Path(path)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create {path}: {exc}", EXIT_IO)
    return directory


def cmd_code(args: argparse.Namespace) -> int:
    real = _load_realization(args.input)
    if args.semantics:
        real = real.with_semantics(Semantics(args.semantics))
    try:
        code = code_of(real)
    except OversizeError as exc:
        raise CliError(str(exc), EXIT_INVALID)
    _write(args.output, dump_code(code))
    if args.reps:
        _write(args.reps, _reps_table(real))
    if args.figures:
        from .figures import save_realization_figure

        directory = _figures_dir(args.figures)
        save_realization_figure(
            str(directory / "realization.png"),
            real,
            representatives_of(real),
            title=f"{len(code)} codewords ({real.semantics.value})",
        )
    return EXIT_OK


def _minimize_report(result, extra: Optional[list[tuple[str, str]]] = None) -> str:
    rows = [
        ("vertices_before", result.vertices_before),
        ("vertices_after", result.vertices_after),
        ("attempts", result.attempts),
        ("budget_exhausted", result.budget_exhausted),
        ("per_figure_bound", result.per_figure_bound),
        ("meets_vertex_bound", result.meets_vertex_bound),
    ]
    lines = ["key\tvalue"]
    lines += [f"{k}\t{v}" for k, v in rows]
    if extra:
        lines += [f"{k}\t{v}" for k, v in extra]
    lines += [f"move\t{m}" for m in result.moves]
    return "\n".join(lines) + "\n"


def cmd_minimize(args: argparse.Namespace) -> int:
    real = _load_realization(args.input)
    figures_dir = _figures_dir(args.figures) if args.figures else None
    if figures_dir is not None:
        from .figures import save_realization_figure

        save_realization_figure(
            str(figures_dir / "before.png"), real, title="before"
        )
    try:
        if args.open:
            if real.semantics is not Semantics.OPEN:
                raise CliError(
                    "--open requires an open-semantics input", EXIT_INVALID
                )
            try:
                outcome = open_minimize(real, budget=args.budget)
            except DegenerateSetError as exc:
                raise CliError(str(exc), EXIT_INVALID)
            shrunk = outcome.realization
            report = _minimize_report(
                outcome.closed_result,
                [
                    ("certificate_points", len(outcome.certificate.points)),
                    ("total_vertex_bound", outcome.total_vertex_bound),
                    ("meets_total_bound", outcome.meets_total_bound),
                ],
            )
        else:
            if real.semantics is not Semantics.CLOSED:
                raise CliError(
                    "minimizing an open realization needs --open", EXIT_INVALID
                )
            pinned = [p for _w, p in representatives_of(real)]
            result = minimize(real, pinned, budget=args.budget)
            shrunk = result.realization
            report = _minimize_report(result)
    except VerificationError as exc:
        raise CliError(f"verification failed: {exc}", EXIT_VERIFY)
    _write(args.output, dump_realization(shrunk))
    if args.report:
        _write(args.report, report)
    if figures_dir is not None:
        save_realization_figure(
            str(figures_dir / "after.png"), shrunk, title="after"
        )
    return EXIT_OK


def cmd_decide(args: argparse.Namespace) -> int:
    code = _load_code(args.input)
    semantics = Semantics(args.semantics)
    acted = False
    if args.emit or args.solver is not None or args.solver_from_env:
        halfplanes = args.n_halfplanes or vertex_bound(
            code.n, semantics
        ).per_polygon
        try:
            sentence = emit_sentence(code, halfplanes, semantics)
        except (MissingEmptyWord, ValueError) as exc:
            raise CliError(f"cannot emit: {exc}", EXIT_INVALID)
        text = render_smt(sentence)
        if args.emit:
            _write(args.emit, text)
            acted = True
        command = args.solver if args.solver is not None else args.env_solver
        if command:
            result = solve_external(text, command, timeout=args.timeout)
            print(result.status.value)
            if result.status is SolveStatus.SOLVER_ERROR:
                raise CliError(f"solver failed: {result.detail}", EXIT_SOLVER)
            acted = True
    if args.search is not None:
        try:
            witness = search_realization(code, args.search, args.max_vertices)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_INVALID)
        if witness is None:
            print("none within budget")
        else:
            print("witness:")
            sys.stdout.write(dump_realization(witness))
        acted = True
    if not acted:
        raise CliError(
            "nothing to do: pass --emit, --solver, or --search", EXIT_INVALID
        )
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    real = _load_realization(args.input)
    reps = representatives_of(real) if args.reps else None
    _write(args.output, render_svg(real, reps))
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    semantics_list = (
        [Semantics.CLOSED, Semantics.OPEN]
        if args.semantics == "both"
        else [Semantics(args.semantics)]
    )
    lines = ["n\tsemantics\tper_polygon\ttotal"]
    for n in range(1, args.max_n + 1):
        for sem in semantics_list:
            budget = vertex_bound(n, sem)
            lines.append(
                f"{n}\t{sem.value}\t{budget.per_polygon}\t{budget.total}"
            )
    _write(args.output, "\n".join(lines) + "\n")
    if args.figures:
        from .figures import save_bounds_figure

        directory = _figures_dir(args.figures)
        save_bounds_figure(str(directory / "bounds.png"), args.max_n)
    return EXIT_OK


def cmd_bridge_check(args: argparse.Namespace) -> int:
    real = _load_realization(args.input)
    if real.semantics is not Semantics.OPEN:
        raise CliError("bridge-check expects an open realization", EXIT_INVALID)
    report = check_empty_interior_lemma(real)
    if report.degenerate_members:
        labels = [str(i + 1) for i in report.degenerate_members]
        print(f"degenerate members (empty as open sets): {', '.join(labels)}")
    print(f"closure-only codewords: {len(report.closed_only_words)}")
    for check in report.checks:
        shape = "empty"
        if check.intersection is not None:
            shape = ("point", "segment", "polygon")[check.intersection.dim]
        verdict = "ok" if check.empty_interior else "VIOLATION"
        print(f"  {word_label(check.word)}\t{shape}\t{verdict}")
    if not report.ok:
        raise CliError("empty-interior check failed", EXIT_VERIFY)
    print("empty-interior check passed")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    reals = [
        random_realization(
            rng,
            n=args.n,
            max_vertices=args.max_vertices,
            coord_range=args.coord_range,
            semantics=Semantics(args.semantics),
            degenerate_ok=not args.no_degenerate,
        )
        for _ in range(args.count)
    ]
    if args.output_dir:
        directory = _figures_dir(args.output_dir)
        for i, real in enumerate(reals):
            name = f"gen-{args.seed}-{i:03d}.json"
            _write(str(directory / name), dump_realization(real))
        print(f"wrote {len(reals)} realizations to {directory}")
    else:
        for real in reals:
            sys.stdout.write(dump_realization(real))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planecode",
        description="Exact workbench for convex codes of polygons in the plane",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("code", help="compute the code of a realization")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None, help="code JSON (default stdout)")
    p.add_argument("--reps", default=None, help="write codeword/witness TSV here")
    p.add_argument("--semantics", choices=["closed", "open"], default=None,
                   help="override the document semantics")
    p.add_argument("--figures", default=None, help="directory for PNG figures")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("minimize", help="shrink a realization, code preserved")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--open", action="store_true",
                   help="minimize through the open-closed reduction")
    p.add_argument("--report", default=None, help="write a TSV report here")
    p.add_argument("--figures", default=None, help="directory for PNG figures")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("decide", help="emit/solve/search realizability")
    p.add_argument("input", help="code JSON file")
    p.add_argument("--semantics", choices=["closed", "open"], default="closed")
    p.add_argument("--emit", default=None, help="write the solver input here")
    p.add_argument("--n-halfplanes", type=int, default=None,
                   help="halfplanes per figure (default: the per-figure bound)")
    p.add_argument("--solver", default=None,
                   help="solver command ({file} placeholder or stdin)")
    p.add_argument("--timeout", type=float, default=None)
    p.add_argument("--search", type=int, default=None, metavar="GRID",
                   help="brute-force search on {0..GRID}^2")
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--config", default=None,
                   help="JSON config with solver/timeout defaults")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("render", help="render a realization to SVG")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--reps", action="store_true",
                   help="overlay one dot per codeword")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bounds", help="print the vertex budget table")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--semantics", choices=["closed", "open", "both"],
                   default="both")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--figures", default=None, help="directory for PNG figures")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bridge-check",
                       help="check closure-only codewords have flat support")
    p.add_argument("input")
    p.set_defaults(func=cmd_bridge_check)

    p = sub.add_parser("gen", help="generate random realizations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--coord-range", type=int, default=16)
    p.add_argument("--semantics", choices=["closed", "open"], default="closed")
    p.add_argument("--no-degenerate", action="store_true",
                   help="only full-dimensional figures")
    p.add_argument("-o", "--output-dir", default=None)
    p.set_defaults(func=cmd_gen)

    return parser


def _apply_config(args: argparse.Namespace) -> None:
    """Solver defaults: flags beat the environment, which beats the config
    file."""
    config = {}
    if getattr(args, "config", None):
        try:
            config = json.loads(_read(args.config))
        except json.JSONDecodeError as exc:
            raise CliError(f"bad config file: {exc}", EXIT_PARSE)
    env_solver = default_solver_command()
    args.env_solver = env_solver or config.get("solver")
    args.solver_from_env = args.solver is None and bool(args.env_solver)
    if args.timeout is None:
        args.timeout = float(
            os.environ.get("PLANECODE_TIMEOUT") or config.get("timeout") or 60.0
        )


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "decide":
            _apply_config(args)
        return args.func(args)
    except CliError as exc:
        print(f"planecode: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
