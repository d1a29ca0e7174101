"""Command-line interface: ``bookcross <subcommand> ...``.

Exit status: 0 success, 1 property false (decision commands with
``--strict``), 2 usage or input error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import bookdraw, verify
from .checker.courcelle import UNSUPPORTED, RankLimitError, eval_courcelle, model_check
from .checker.naive import BudgetExceeded, EvalBudget, eval_naive
from .graph import GraphError, SizeLimitError, is_outerplanar, parse_graph
from .mso2 import constructions, library
from .mso2.syntax import FormulaError, parse_formula, pretty, to_text
from .treewidth import DecompositionError, format_decomposition, treewidth_exact

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _graph(args):
    return parse_graph(_read(args.input), args.format)


def _budget(args, engine: str = "auto") -> EvalBudget:
    seconds = None if args.budget_ms is None else args.budget_ms / 1000
    return EvalBudget(max_seconds=seconds, engine=engine, q_limit=args.rank)


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _decision(answer: bool, args) -> int:
    print("yes" if answer else "no")
    return EXIT_FALSE if args.strict and not answer else EXIT_OK


# ---------------------------------------------------------------------------
# subcommands


def cmd_cr(args) -> int:
    g = _graph(args)
    if args.max_n is not None and g.n > args.max_n:
        raise SizeLimitError(f"graph has {g.n} vertices, above --max-n {args.max_n}")
    solve = bookdraw.cr1_exact if args.cmd == "cr1" else bookdraw.cr2_exact
    k, drawing = solve(g)
    print(f"k={k}")
    if args.witness:
        _write(args.witness, drawing.to_text(g))
    return EXIT_OK


def cmd_planar2(args) -> int:
    return _decision(bookdraw.is_2page_planar(_graph(args)), args)


def cmd_outerplanar(args) -> int:
    return _decision(is_outerplanar(_graph(args)), args)


def cmd_treewidth(args) -> int:
    g = _graph(args)
    w, td = treewidth_exact(g)
    print(f"tw={w}")
    if args.decomposition:
        _write(args.decomposition, format_decomposition(td))
    return EXIT_OK


def cmd_mso_check(args) -> int:
    f = parse_formula(_read(args.formula))
    g = parse_graph(_read(args.graph), args.format)
    budget = _budget(args, args.engine)
    if args.engine == "courcelle":
        try:
            r = eval_courcelle(g, f, budget=budget)
        except RankLimitError as exc:
            print(UNSUPPORTED)
            print("engine=courcelle")
            print(f"# {exc}", file=sys.stderr)
            return EXIT_OK
        engine = "courcelle"
    elif args.engine == "naive":
        r, engine = eval_naive(g, f, budget=budget), "naive"
    else:
        r, engine = model_check(g, f, budget=budget, with_engine=True)
    print(UNSUPPORTED if r is UNSUPPORTED else ("true" if r else "false"))
    print(f"engine={engine}")
    if r is False and args.strict:
        return EXIT_FALSE
    return EXIT_OK


FORMULA_NAMES = sorted(set(library.BASIC_NAMES) | {"onepage", "twopage", "zeta"})


def cmd_formula(args) -> int:
    name = args.name.replace("-", "_")
    if name == "onepage":
        f = constructions.build_onepage(args.k)
    elif name == "twopage":
        f = constructions.build_twopage()
    elif name == "zeta":
        f = constructions.build_zeta(args.k)
    elif name in library.BASIC_NAMES:
        params: list = list(args.param)
        if name == "color_k":
            params = [args.k if args.k is not None else 3]
        elif name == "minor_h":
            params = [parse_graph(args.param[0], "graph6")] if args.param else []
        f = library.build_basic(name, *params)
    else:
        raise UsageError(f"unknown formula {args.name!r}; choose from {', '.join(FORMULA_NAMES)}")
    print(pretty(f) if args.pretty else to_text(f))
    return EXIT_OK


def cmd_diagrams(args) -> int:
    for d in bookdraw.enumerate_crossing_diagrams(args.k, args.pages, exact=not args.at_most,
                                                  max_k=args.max_k):
        print(d.code)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "list":
        for name, (crit, desc, _) in verify.SUITES.items():
            print(f"{name}\t{crit}\t{desc}")
        return EXIT_OK
    if args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}")
    opts = verify.Options(workers=args.workers, seed=args.seed, max_n=args.max_n,
                          budget=_budget(args))
    result = verify.run_suite(args.suite, opts)
    print(result.table())
    return EXIT_OK if result.passed else EXIT_FALSE


def cmd_render(args) -> int:
    g = _graph(args)
    if args.drawing:
        d = bookdraw.parse_drawing(_read(args.drawing), g)
    else:
        d = (bookdraw.cr1_exact if args.pages == 1 else bookdraw.cr2_exact)(g)[1]
    svg = bookdraw.render_svg(g, d, width=args.width)
    if args.out == "-":
        sys.stdout.write(svg)
    else:
        _write(args.out, svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bookcross", description="Book crossing numbers, MSO2 formulas and model checking.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def graph_args(sp, positional=True):
        if positional:
            sp.add_argument("input", nargs="?", default="-", help="graph file, '-' for stdin (default)")
        sp.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")

    def limits(sp):
        sp.add_argument("--max-n", type=_positive, default=None)
        sp.add_argument("--rank", type=_positive, default=3, help="set-quantifier rank limit")
        sp.add_argument("--budget-ms", type=_positive, default=None)

    for name in ("cr1", "cr2"):
        sp = sub.add_parser(name, help=f"exact {name[-1]}-page crossing number")
        graph_args(sp)
        limits(sp)
        sp.add_argument("--witness", help="write the optimal drawing here")
        sp.set_defaults(fn=cmd_cr)

    for name, fn, what in (("planar2", cmd_planar2, "2-page planarity"),
                           ("outerplanar", cmd_outerplanar, "outerplanarity")):
        sp = sub.add_parser(name, help=what)
        graph_args(sp)
        sp.add_argument("--strict", action="store_true", help="exit 1 when the answer is no")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("treewidth", help="exact treewidth")
    graph_args(sp)
    sp.add_argument("--decomposition", help="write the decomposition here")
    sp.set_defaults(fn=cmd_treewidth)

    sp = sub.add_parser("mso-check", help="model-check a formula file on a graph")
    sp.add_argument("formula", help="formula file in the S-expression syntax")
    sp.add_argument("graph", nargs="?", default="-")
    sp.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    sp.add_argument("--engine", choices=("auto", "naive", "courcelle"), default="auto")
    sp.add_argument("--strict", action="store_true")
    limits(sp)
    sp.set_defaults(fn=cmd_mso_check)

    sp = sub.add_parser("formula", help="print a builder formula")
    sp.add_argument("--name", required=True, help=", ".join(FORMULA_NAMES))
    sp.add_argument("--k", type=int, default=None, help="crossings for onepage/zeta, colours for color_k")
    sp.add_argument("--param", action="append", default=[],
                    help="set-variable names, or a graph6 pattern for minor_h")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(fn=cmd_formula)

    sp = sub.add_parser("diagrams", help="list canonical crossing diagrams")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--pages", type=int, choices=(1, 2), default=1)
    sp.add_argument("--at-most", action="store_true", help="all diagrams with at most k crossings")
    sp.add_argument("--max-k", type=_positive, default=bookdraw.DIAGRAM_MAX_K, help="enumeration cap")
    sp.set_defaults(fn=cmd_diagrams)

    sp = sub.add_parser("verify", help="run an acceptance suite ('list' shows them)")
    sp.add_argument("suite")
    sp.add_argument("--workers", type=_positive, default=1)
    sp.add_argument("--seed", type=int, default=0)
    limits(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("render", help="write an SVG arc diagram")
    graph_args(sp)
    sp.add_argument("--drawing", help="drawing file; default is an optimal drawing")
    sp.add_argument("--pages", type=int, choices=(1, 2), default=2)
    sp.add_argument("--width", type=_positive, default=640)
    sp.add_argument("--out", default="-")
    sp.set_defaults(fn=cmd_render)
    return p


def _check_args(args) -> None:
    if args.cmd == "formula" and args.name.replace("-", "_") in ("onepage", "zeta") and args.k is None:
        raise UsageError(f"--k is required for {args.name}")


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _check_args(args)
        return args.fn(args)
    except UsageError as exc:
        print(f"bookcross: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"bookcross: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, SizeLimitError, FormulaError, DecompositionError,
            bookdraw.DiagramError, ValueError) as exc:
        print(f"bookcross: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
