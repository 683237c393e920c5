"""Command line front end.

Subcommands: solve, solve-hfree, separator, check-pkfree, generate, bench.
Reports go to stdout as JSON; diagnostics go to stderr as JSON. Exit codes:
0 success, 2 input error, 3 invariant violation.

Environment overrides: QMWIS_ASSERT sets the default assertion level,
QMWIS_BRUTEFORCE_CAP the default size cap of brute-force oracles.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .graph import Graph, WeightMap, closed_neighborhood
from .graphio import GraphParseError, ReportDocument, emit_graph, error_document, parse_graph
from .hfree import ComponentOracle, PatternGraph, make_bruteforce_oracle, make_pk_oracle, solve_hfree
from .instrumentation import InvariantViolation
from .oracle import (
    DEFAULT_BRUTE_FORCE_CAP,
    GenerationError,
    GeneratorSpec,
    GraphTooLarge,
    generate,
    longest_induced_path_at_most,
)
from .pkfree import SolveResult, solve_pkfree
from .separators import balanced_separator_core, verify_balanced

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VIOLATION = 3

ASSERT_CHOICES = ("off", "fair", "paranoid")


def _default_assert() -> str:
    level = os.environ.get("QMWIS_ASSERT", "fair")
    return level if level in ASSERT_CHOICES else "fair"


def _default_bruteforce_cap() -> int:
    raw = os.environ.get("QMWIS_BRUTEFORCE_CAP", "")
    try:
        cap = int(raw)
    except ValueError:
        return DEFAULT_BRUTE_FORCE_CAP
    return cap if cap >= 1 else DEFAULT_BRUTE_FORCE_CAP


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmwis",
        description="Exact maximum-weight independent set via separator-guided branching.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--assert",
        dest="assertion_level",
        choices=ASSERT_CHOICES,
        default=_default_assert(),
        help="runtime invariant checking level (default: %(default)s)",
    )
    common.add_argument("--seed", type=int, default=0, help="generator seed")
    common.add_argument("--stats", metavar="PATH", help="write run statistics JSON to PATH")
    common.add_argument("--witness", action="store_true", help="include the witness in the report")
    common.add_argument("--k-hint", type=int, default=None, help="claimed induced-path bound")
    common.add_argument("--parallel", type=int, default=None, help="solver worker threads")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_solve = sub.add_parser("solve", parents=[common], help="solve one graph file")
    p_solve.add_argument("file", help="graph file path, or - for stdin")

    p_hfree = sub.add_parser(
        "solve-hfree", parents=[common], help="solve with a forbidden pattern and oracles"
    )
    p_hfree.add_argument("file", help="graph file path, or - for stdin")
    p_hfree.add_argument("--pattern", required=True, help="pattern graph file")
    p_hfree.add_argument(
        "--oracle",
        action="append",
        default=None,
        metavar="SPEC",
        help="oracle per pattern component, in order: bruteforce | bruteforce:<cap> | pk:<k>",
    )
    p_hfree.add_argument(
        "--assume-hfree",
        action="store_true",
        help="claim the input is pattern-free; enables the pattern-dependent invariants",
    )

    p_sep = sub.add_parser(
        "separator", parents=[common], help="compute a balanced separator core"
    )
    p_sep.add_argument("file", help="graph file path, or - for stdin")
    p_sep.add_argument("--i", dest="parameter_i", type=int, default=2, help="balance exponent")

    p_check = sub.add_parser(
        "check-pkfree", parents=[common], help="test for induced paths on k vertices"
    )
    p_check.add_argument("k", type=int, help="path length to forbid")
    p_check.add_argument("file", help="graph file path, or - for stdin")

    p_gen = sub.add_parser("generate", parents=[common], help="emit a generated graph file")
    p_gen.add_argument("kind", choices=GeneratorSpec.KINDS, help="generator family")
    p_gen.add_argument("--size", type=int, required=True, help="vertex count")
    p_gen.add_argument("--p", type=float, default=None, help="edge probability")
    p_gen.add_argument("--path-bound", type=int, default=None, help="rejection bound k")
    p_gen.add_argument("--weight-lo", type=int, default=0, help="minimum weight")
    p_gen.add_argument("--weight-hi", type=int, default=100, help="maximum weight")
    p_gen.add_argument("--max-attempts", type=int, default=5000, help="rejection attempt cap")
    p_gen.add_argument("--out", default=None, help="output path (default stdout)")

    p_bench = sub.add_parser("bench", parents=[common], help="solve every graph in a directory")
    p_bench.add_argument("dir", help="directory of .graph files")

    return parser


def _read_graph(path: str) -> tuple[Graph, WeightMap]:
    if path == "-":
        return parse_graph(sys.stdin.read())
    return parse_graph(Path(path).read_bytes())


def _solver_payload(result: SolveResult, args: argparse.Namespace, g: Graph) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "input": {"vertices": g.n, "edges": g.edge_count},
        "weight": result.weight,
        "assertions_checked": result.stats.assertions_checked,
    }
    if args.witness:
        payload["witness"] = sorted(result.witness)
    return payload


def _finish(
    report: ReportDocument, result: SolveResult | None, args: argparse.Namespace
) -> int:
    if args.stats and result is not None:
        Path(args.stats).write_text(
            ReportDocument(
                command=f"{report.command}-stats",
                assertion_level=report.assertion_level,
                payload={"stats": result.stats.to_dict()},
            ).to_json()
        )
    sys.stdout.write(report.to_json())
    return EXIT_OK


def _parse_oracle_spec(spec: str) -> ComponentOracle:
    if spec == "bruteforce":
        return make_bruteforce_oracle(_default_bruteforce_cap())
    if spec.startswith("bruteforce:"):
        cap = int(spec.split(":", 1)[1])
        if cap < 1:
            raise ValueError(f"brute-force cap must be >= 1, got {cap}")
        return make_bruteforce_oracle(cap)
    if spec.startswith("pk:"):
        k = int(spec.split(":", 1)[1])
        return make_pk_oracle(k)
    raise ValueError(
        f"unknown oracle spec {spec!r} (expected bruteforce, bruteforce:<cap>, or pk:<k>)"
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    g, w = _read_graph(args.file)
    result = solve_pkfree(
        g,
        w,
        k_hint=args.k_hint,
        assertion_level=args.assertion_level,
        parallel=args.parallel,
    )
    report = ReportDocument(
        command="solve",
        assertion_level=args.assertion_level,
        payload=_solver_payload(result, args, g),
    )
    return _finish(report, result, args)


def _cmd_solve_hfree(args: argparse.Namespace) -> int:
    g, w = _read_graph(args.file)
    pattern_graph, _ = _read_graph(args.pattern)
    pattern = PatternGraph.from_graph(pattern_graph)
    specs = args.oracle or []
    if len(specs) != len(pattern.components):
        raise ValueError(
            f"pattern has {len(pattern.components)} components; "
            f"pass --oracle once per component ({len(specs)} given)"
        )
    oracles = [_parse_oracle_spec(spec) for spec in specs]
    result = solve_hfree(
        pattern,
        g,
        w,
        oracles,
        assume_hfree=args.assume_hfree,
        assertion_level=args.assertion_level,
        parallel=args.parallel,
    )
    payload = _solver_payload(result, args, g)
    payload["pattern"] = {
        "components": [part.n for part in pattern.components],
        "total_size": pattern.total_size,
    }
    payload["oracle_calls"] = result.stats.oracle_calls
    report = ReportDocument(
        command="solve-hfree", assertion_level=args.assertion_level, payload=payload
    )
    return _finish(report, result, args)


def _cmd_separator(args: argparse.Namespace) -> int:
    g, _ = _read_graph(args.file)
    core = balanced_separator_core(g, args.parameter_i)
    neighborhood = closed_neighborhood(g, core.core)
    balanced = verify_balanced(g, neighborhood, core.balance_bound)
    report = ReportDocument(
        command="separator",
        assertion_level=args.assertion_level,
        payload={
            "input": {"vertices": g.n, "edges": g.edge_count},
            "parameter_i": core.parameter_i,
            "core": sorted(core.core),
            "closed_neighborhood": sorted(neighborhood),
            "balance_bound": str(core.balance_bound),
            "balanced": balanced,
        },
    )
    if not balanced:
        raise InvariantViolation(
            "separator-balance",
            f"core neighborhood is not {core.balance_bound}-balanced",
            {"core": sorted(core.core)},
        )
    return _finish(report, None, args)


def _cmd_check_pkfree(args: argparse.Namespace) -> int:
    g, _ = _read_graph(args.file)
    free = longest_induced_path_at_most(g, args.k)
    report = ReportDocument(
        command="check-pkfree",
        assertion_level=args.assertion_level,
        payload={
            "input": {"vertices": g.n, "edges": g.edge_count},
            "k": args.k,
            "pk_free": free,
        },
    )
    return _finish(report, None, args)


def _cmd_generate(args: argparse.Namespace) -> int:
    spec = GeneratorSpec(
        kind=args.kind,
        size=args.size,
        seed=args.seed,
        p=args.p,
        path_bound=args.path_bound,
        weight_range=(args.weight_lo, args.weight_hi),
        max_attempts=args.max_attempts,
    )
    g, w = generate(spec)
    text = emit_graph(g, w, comment=f"generated kind={spec.kind} size={spec.size} seed={spec.seed}")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    root = Path(args.dir)
    if not root.is_dir():
        raise ValueError(f"{args.dir} is not a directory")
    rows: list[dict[str, Any]] = []
    total_weight = 0
    total_calls = 0
    for path in sorted(root.glob("*.graph")):
        g, w = parse_graph(path.read_bytes())
        result = solve_pkfree(
            g,
            w,
            k_hint=args.k_hint,
            assertion_level=args.assertion_level,
            parallel=args.parallel,
        )
        total_weight += result.weight
        total_calls += result.stats.calls
        rows.append(
            {
                "file": path.name,
                "vertices": g.n,
                "edges": g.edge_count,
                "weight": result.weight,
                "calls": result.stats.calls,
                "max_depth": result.stats.max_depth,
            }
        )
    report = ReportDocument(
        command="bench",
        assertion_level=args.assertion_level,
        payload={
            "directory": args.dir,
            "graphs": rows,
            "totals": {"graphs": len(rows), "weight": total_weight, "calls": total_calls},
        },
    )
    return _finish(report, None, args)


_COMMANDS = {
    "solve": _cmd_solve,
    "solve-hfree": _cmd_solve_hfree,
    "separator": _cmd_separator,
    "check-pkfree": _cmd_check_pkfree,
    "generate": _cmd_generate,
    "bench": _cmd_bench,
}


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.subcommand](args)
    except InvariantViolation as exc:
        sys.stderr.write(error_document("invariant-violation", str(exc), {"rule": exc.rule}))
        return EXIT_VIOLATION
    except GraphParseError as exc:
        sys.stderr.write(
            error_document("parse-error", str(exc), {"kind": exc.kind, "line": exc.line_no})
        )
        return EXIT_INPUT
    except (GraphTooLarge, GenerationError, ValueError) as exc:
        sys.stderr.write(error_document("input-error", str(exc)))
        return EXIT_INPUT
    except OSError as exc:
        sys.stderr.write(error_document("io-error", str(exc)))
        return EXIT_INPUT


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
