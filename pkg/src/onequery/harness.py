"""Corpora, verification sweeps and the black-box contrast table."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .dispatch import (
    ALL_TABLES,
    INPUTS,
    MNEMONICS,
    TruthTable2,
    describe,
    eval_classical_two_query,
    execute,
    select_protocol,
)
from .formula import (
    FALSE,
    TRUE,
    And,
    CnfFormula,
    Formula,
    Not,
    Or,
    Var,
    cnf_to_formula,
    serialize_expr,
)
from .oracle import QUANTUM, CountedOracle, Solver
from .qsim import NonDeterministicState, Trace

MAX_PAIRS = 10**6
MAX_FORMULAS = 10**5
DEFAULT_CLAUSE_RATIO = 4.2


class BudgetExceeded(ValueError):
    pass


@dataclass
class Corpus:
    mode: str
    params: dict
    pairs: list[tuple[Formula, Formula]] = field(default_factory=list)


def enumerate_formulas(max_vars: int, max_nodes: int) -> list[Formula]:
    """Every AST with at most ``max_nodes`` nodes over x1..x{max_vars}.

    Leaves are the variables and both constants; And/Or are binary. The
    result is sorted by (node count, serialization).
    """
    if not 0 <= max_vars <= 3:
        raise BudgetExceeded("exhaustive enumeration supports at most 3 variables")
    by_size: dict[int, list[Formula]] = {1: [TRUE, FALSE] + [Var(i) for i in range(1, max_vars + 1)]}
    total = len(by_size[1])
    for size in range(2, max_nodes + 1):
        level: list[Formula] = [Not(f) for f in by_size[size - 1]]
        for left in range(1, size - 1):
            right = size - 1 - left
            for x, y in itertools.product(by_size[left], by_size[right]):
                level.append(And(x, y))
                level.append(Or(x, y))
        total += len(level)
        if total > MAX_FORMULAS:
            raise BudgetExceeded(f"more than {MAX_FORMULAS} formulas at node bound {max_nodes}")
        by_size[size] = level
    seen: dict[str, tuple[int, Formula]] = {}
    for size in sorted(by_size):
        for f in by_size[size]:
            seen.setdefault(serialize_expr(f), (size, f))
    ordered = sorted(seen.items(), key=lambda kv: (kv[1][0], kv[0]))
    return [f for _, (_, f) in ordered]


def enumerate_small(max_vars: int, max_nodes: int, max_pairs: Optional[int] = None) -> Corpus:
    """Exhaustive formula family, paired up.

    Pairs are the full Cartesian square when it fits in ``max_pairs``;
    otherwise ``max_pairs`` evenly spaced pairs of the square taken in
    row-major order.
    """
    formulas = enumerate_formulas(max_vars, max_nodes)
    square = len(formulas) ** 2
    if max_pairs is None:
        if square > MAX_PAIRS:
            raise BudgetExceeded(f"{square} pairs exceeds {MAX_PAIRS}; pass max_pairs to subsample")
        max_pairs = square
    if max_pairs > MAX_PAIRS:
        raise BudgetExceeded(f"max_pairs may not exceed {MAX_PAIRS}")
    n = len(formulas)
    if square <= max_pairs:
        indices = range(square)
    else:
        indices = sorted({k * square // max_pairs for k in range(max_pairs)})
    pairs = [(formulas[i // n], formulas[i % n]) for i in indices]
    params = {"max_vars": max_vars, "max_nodes": max_nodes, "formulas": n, "max_pairs": max_pairs}
    return Corpus("exhaustive-small", params, pairs)


def gen_random_cnf(vars: int, clauses: int, width: int, seed: int) -> Formula:
    """Uniform random k-CNF: distinct variables per clause, fair coin polarities."""
    if not 1 <= width <= vars:
        raise ValueError("need 1 <= width <= vars")
    rng = random.Random(seed)
    cls = []
    for _ in range(clauses):
        picked = rng.sample(range(1, vars + 1), width)
        cls.append([v if rng.random() < 0.5 else -v for v in picked])
    return cnf_to_formula(CnfFormula(cls, vars))


def random_corpus(pairs: int, vars: int, clauses: Optional[int], width: int, seed: int) -> Corpus:
    if clauses is None:
        clauses = round(DEFAULT_CLAUSE_RATIO * vars)
    rng = random.Random(seed)
    out = []
    for _ in range(pairs):
        a = gen_random_cnf(vars, clauses, width, rng.getrandbits(64))
        b = gen_random_cnf(vars, clauses, width, rng.getrandbits(64))
        out.append((a, b))
    params = {"pairs": pairs, "vars": vars, "clauses": clauses, "width": width, "seed": seed}
    return Corpus("random", params, out)


# --- verification ----------------------------------------------------------


def verify_pair(
    F: TruthTable2,
    a: Formula,
    b: Formula,
    solver: Solver = "dpll",
    trace: Optional[Trace] = None,
    cache: Optional[dict] = None,
) -> dict:
    """Run the two-query baseline and the one-query protocol on fresh oracles."""
    protocol = select_protocol(F)
    record = {
        "table": str(F),
        "protocol": describe(protocol),
        "a": serialize_expr(a),
        "b": serialize_expr(b),
        "classical_answer": None,
        "quantum_answer": None,
        "classical_queries": None,
        "quantum_queries": None,
        "quantum_applications": None,
        "agree": False,
        "deterministic": True,
        "error": None,
    }
    classical = CountedOracle(solver, cache=cache)
    quantum = CountedOracle(solver, cache=cache)
    try:
        record["classical_answer"] = eval_classical_two_query(F, a, b, classical)
        record["quantum_answer"] = execute(protocol, a, b, quantum, trace)
    except NonDeterministicState as exc:
        record["deterministic"] = False
        record["error"] = str(exc)
    except Exception as exc:  # recorded, never raised out of a sweep
        record["error"] = f"{type(exc).__name__}: {exc}"
    record["classical_queries"] = classical.count
    record["quantum_queries"] = quantum.count
    record["quantum_applications"] = quantum.count_kind(QUANTUM)
    record["agree"] = (
        record["error"] is None and record["classical_answer"] == record["quantum_answer"]
    )
    return record


def summarize(records: list[dict]) -> dict:
    return {
        "total": len(records),
        "agreements": sum(r["agree"] for r in records),
        "mismatches": sum(not r["agree"] for r in records),
        "determinism_violations": sum(not r["deterministic"] for r in records),
        "errors": sum(r["error"] is not None for r in records),
        "circuit_runs": sum(r["quantum_applications"] for r in records),
        "max_quantum_queries": max((r["quantum_queries"] for r in records), default=0),
        "min_classical_queries": min((r["classical_queries"] for r in records), default=0),
        "max_classical_queries": max((r["classical_queries"] for r in records), default=0),
    }


def sweep(corpus: Corpus, solver: Solver = "dpll", tables=ALL_TABLES, memo: bool = True) -> dict:
    """verify_pair for every table and pair, in corpus order.

    With ``memo`` the oracles of one sweep share an answer cache, so each
    distinct formula is solved once.
    """
    cache: Optional[dict] = {} if memo else None
    records = [verify_pair(F, a, b, solver, cache=cache) for a, b in corpus.pairs for F in tables]
    return {
        "corpus": {"mode": corpus.mode, **corpus.params, "pair_count": len(corpus.pairs)},
        "solver": solver if isinstance(solver, str) else "custom",
        "summary": summarize(records),
        "records": records,
    }


def report_ok(report: dict) -> bool:
    s = report["summary"]
    return s["mismatches"] == 0 and s["determinism_violations"] == 0


# --- black-box contrast ----------------------------------------------------


@dataclass(frozen=True)
class DecisionTree1:
    """Classical one-query strategy: read one input bit, map it to the output."""

    slot: int
    outputs: tuple[int, int]

    def __call__(self, a: int, b: int) -> int:
        return self.outputs[(a, b)[self.slot]]

    def __str__(self) -> str:
        bit = "a" if self.slot == 0 else "b"
        return f"query {bit}; 0->{self.outputs[0]}, 1->{self.outputs[1]}"


ALL_TREES = tuple(
    DecisionTree1(slot, (o0, o1)) for slot in (0, 1) for o0 in (0, 1) for o1 in (0, 1)
)


def trees_computing(F: TruthTable2) -> list[DecisionTree1]:
    return [t for t in ALL_TREES if all(t(a, b) == F(a, b) for a, b in INPUTS)]


_NAMES = {v: k for k, v in MNEMONICS.items()}


def contrast_demo() -> dict:
    rows = []
    for F in ALL_TABLES:
        trees = trees_computing(F)
        rows.append(
            {
                "table": str(F),
                "name": _NAMES.get(F.bits, ""),
                "trees": len(trees),
                "strategies": [str(t) for t in trees],
                "one_query_protocol": describe(select_protocol(F)),
            }
        )
    focus = {name: len(trees_computing(TruthTable2(MNEMONICS[name]))) for name in ("and", "xor", "a", "b")}
    return {"tree_count": len(ALL_TREES), "focus": focus, "rows": rows}


def format_contrast(demo: dict) -> str:
    lines = [
        f"classical one-query decision trees over two black-box bits: {demo['tree_count']}",
        "",
        f"{'F':<6}{'name':<12}{'trees':>6}  one-query SAT protocol",
    ]
    for row in demo["rows"]:
        lines.append(
            f"{row['table']:<6}{row['name']:<12}{row['trees']:>3}/{demo['tree_count']}  {row['one_query_protocol']}"
        )
    return "\n".join(lines)
