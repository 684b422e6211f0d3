"""Command line entry point: ``onequery run|verify|contrast``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dispatch import TruthTable2
from .formula import Formula, cnf_to_formula, parse_dimacs, parse_expr
from .harness import (
    contrast_demo,
    enumerate_small,
    format_contrast,
    random_corpus,
    report_ok,
    sweep,
    verify_pair,
)
from .qsim import json_trace


def load_formula(path: str) -> Formula:
    text = Path(path).read_text()
    if Path(path).suffix.lower() in (".cnf", ".dimacs"):
        return cnf_to_formula(parse_dimacs(text))
    return parse_expr(text)


def _cmd_run(args) -> int:
    F = TruthTable2.parse(args.f)
    a, b = load_formula(args.a), load_formula(args.b)
    steps: list = []
    record = verify_pair(F, a, b, args.oracle, json_trace(steps) if args.trace else None)
    if args.trace:
        record["trace"] = steps
    json.dump(record, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if record["agree"] and record["deterministic"] else 1


def _cmd_verify(args) -> int:
    if args.exhaustive:
        corpus = enumerate_small(args.max_vars, args.max_nodes, args.max_pairs)
    else:
        corpus = random_corpus(args.pairs, args.vars, args.clauses, args.width, args.seed)
    report = sweep(corpus, args.oracle, memo=not args.no_cache)
    json.dump(report, sys.stdout, indent=1)
    sys.stdout.write("\n")
    s = report["summary"]
    print(
        f"{corpus.mode}: {len(corpus.pairs)} pairs, {s['total']} cases, "
        f"{s['mismatches']} mismatches, {s['determinism_violations']} determinism violations, "
        f"{s['circuit_runs']} circuit runs, max quantum queries {s['max_quantum_queries']}",
        file=sys.stderr,
    )
    return 0 if report_ok(report) else 1


def _cmd_contrast(args) -> int:
    demo = contrast_demo()
    if args.json:
        json.dump(demo, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print(format_contrast(demo))
    ok = demo["focus"]["and"] == 0 and demo["focus"]["xor"] == 0
    return 0 if ok and demo["focus"]["a"] > 0 and demo["focus"]["b"] > 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onequery",
        description="Compute any function of two SAT answers with one (quantum) oracle query.",
    )
    parser.add_argument("--oracle", choices=("dpll", "brute"), default="dpll", help="SAT backend")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="verify one (F, A, B) case")
    run.add_argument("--f", required=True, help="truth table f00f01f10f11 (e.g. 0110) or mnemonic")
    run.add_argument("--a", required=True, help="formula file (.expr text or .cnf DIMACS)")
    run.add_argument("--b", required=True, help="formula file (.expr text or .cnf DIMACS)")
    run.add_argument("--trace", action="store_true", help="include exact circuit amplitudes")
    run.set_defaults(func=_cmd_run)

    verify = sub.add_parser("verify", help="sweep all 16 tables over a corpus")
    mode = verify.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", action="store_true")
    verify.add_argument("--max-vars", type=int, default=3)
    verify.add_argument("--max-nodes", type=int, default=5)
    verify.add_argument("--max-pairs", type=int, default=2048,
                        help="subsample the pair square evenly down to this many pairs")
    verify.add_argument("--pairs", type=int, default=1000)
    verify.add_argument("--vars", type=int, default=6)
    verify.add_argument("--clauses", type=int, default=None, help="default: round(4.2 * vars)")
    verify.add_argument("--width", type=int, default=3)
    verify.add_argument("--seed", type=int, default=7)
    verify.add_argument("--no-cache", action="store_true",
                        help="solve every query afresh instead of sharing answers within the sweep")
    verify.set_defaults(func=_cmd_verify)

    contrast = sub.add_parser("contrast", help="classical one-query black-box table")
    contrast.add_argument("--json", action="store_true")
    contrast.set_defaults(func=_cmd_contrast)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and args.oracle == "brute" and args.random and args.vars > 12:
        print("warning: brute-force oracle over combined formulas of > 24 variables will fail",
              file=sys.stderr)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"onequery: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
