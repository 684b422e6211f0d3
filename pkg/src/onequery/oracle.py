"""SAT decision oracle with query accounting.

Two independent deciders back the oracle: a DPLL solver over the Tseitin
CNF, and an exhaustive bit-parallel evaluator used as the reference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from .formula import (
    And,
    CnfFormula,
    ConstTrue,
    Formula,
    Not,
    Or,
    Var,
    max_var,
    serialize_expr,
    tseitin,
)

BRUTE_FORCE_MAX_VARS = 24

CLASSICAL = "classical-call"
QUANTUM = "quantum-application"


class VariableBudgetExceeded(ValueError):
    pass


def _columns(n: int) -> list[int]:
    # Bit j of column i is the value of variable i+1 in assignment j.
    size = 1 << n
    cols = []
    for i in range(n):
        block = ((1 << (1 << i)) - 1) << (1 << i)
        pattern = block
        width = 2 << i
        while width < size:
            pattern |= pattern << width
            width <<= 1
        cols.append(pattern)
    return cols


def _truth_column(f: Formula, cols: list[int], full: int) -> int:
    if isinstance(f, Var):
        return cols[f.index - 1]
    if isinstance(f, Not):
        return full ^ _truth_column(f.child, cols, full)
    if isinstance(f, And):
        acc = full
        for c in f.children:
            acc &= _truth_column(c, cols, full)
            if not acc:
                break
        return acc
    if isinstance(f, Or):
        acc = 0
        for c in f.children:
            acc |= _truth_column(c, cols, full)
            if acc == full:
                break
        return acc
    return full if isinstance(f, ConstTrue) else 0


def count_models(f: Formula) -> int:
    """Number of assignments to x1..x{max_var(f)} satisfying ``f``."""
    n = max_var(f)
    if n > BRUTE_FORCE_MAX_VARS:
        raise VariableBudgetExceeded(
            f"{n} variables exceeds the enumeration limit of {BRUTE_FORCE_MAX_VARS}"
        )
    full = (1 << (1 << n)) - 1
    return bin(_truth_column(f, _columns(n), full)).count("1")


def brute_force_sat(f: Formula) -> int:
    """1 iff some assignment satisfies ``f``, by evaluating every assignment.

    All ``2**n`` assignments are evaluated at once as bit columns of Python
    integers, one bit per assignment.
    """
    return int(count_models(f) > 0)


# --- DPLL ------------------------------------------------------------------


class _Dpll:
    def __init__(self, clauses: list[tuple[int, ...]], num_vars: int) -> None:
        self.clauses = clauses
        # truth[lit] for lit in +-1..+-n; negative literals use Python's
        # negative indexing, which never collides with 1..n at length 2n+1
        self.truth: list[bool | None] = [None] * (2 * num_vars + 1)
        self.trail: list[int] = []
        self.occ: dict[int, list[tuple[int, ...]]] = {}
        for c in clauses:
            for lit in c:
                self.occ.setdefault(lit, []).append(c)

    def assign(self, lit: int) -> None:
        self.truth[lit] = True
        self.truth[-lit] = False
        self.trail.append(lit)

    def undo(self, mark: int) -> None:
        truth = self.truth
        while len(self.trail) > mark:
            lit = self.trail.pop()
            truth[lit] = truth[-lit] = None

    def propagate(self, queue: list[int]) -> bool:
        """Unit propagation to fixpoint; False on conflict."""
        truth = self.truth
        while queue:
            lit = queue.pop()
            for c in self.occ.get(-lit, ()):
                vals = [truth[x] for x in c]
                if True in vals:
                    continue
                nfree = vals.count(None)
                if nfree == 0:
                    return False
                if nfree == 1:
                    free = c[vals.index(None)]
                    self.assign(free)
                    queue.append(free)
        return True

    def solve(self) -> bool:
        truth = self.truth
        while True:
            free_lits = set()
            for c in self.clauses:
                vals = [truth[x] for x in c]
                if True not in vals:
                    free_lits.update([x for x, v in zip(c, vals) if v is None])
            if not free_lits:
                return True
            pure = sorted(lit for lit in free_lits if -lit not in free_lits)
            if not pure:
                break
            # pure literals only satisfy clauses, so no propagation is needed
            for lit in pure:
                self.assign(lit)
        var = min(abs(lit) for lit in free_lits)
        mark = len(self.trail)
        for lit in (var, -var):
            self.assign(lit)
            if self.propagate([lit]) and self.solve():
                return True
            self.undo(mark)
        return False


def dpll_sat(c: CnfFormula) -> int:
    """Deterministic DPLL: unit propagation, pure literals, then branch on the
    lowest-index remaining variable with TRUE tried first."""
    # tautological clauses never constrain anything
    clauses = [cl for cl in c.clauses if not any(-lit in cl for lit in cl)]
    if any(not cl for cl in clauses):
        return 0
    solver = _Dpll(clauses, c.num_vars)
    units = []
    for cl in clauses:
        if len(cl) == 1:
            lit = cl[0]
            if solver.truth[lit] is False:
                return 0
            if solver.truth[lit] is None:
                solver.assign(lit)
                units.append(lit)
    if not solver.propagate(units):
        return 0
    return int(solver.solve())


# --- counted oracle --------------------------------------------------------

Solver = Union[str, Callable[[Formula], int]]


def _decide(solver: Solver, f: Formula) -> int:
    if solver == "dpll":
        return dpll_sat(tseitin(f))
    if solver == "brute":
        return brute_force_sat(f)
    if callable(solver):
        answer = int(solver(f))
        if answer not in (0, 1):
            raise ValueError(f"oracle answered {answer!r}, expected 0 or 1")
        return answer
    raise ValueError(f"unknown solver {solver!r}; use 'dpll', 'brute' or a callable")


@dataclass(frozen=True)
class QueryRecord:
    kind: str
    formulas: tuple[str, ...]
    answers: tuple[int, ...]

    def to_json(self) -> str:
        if self.kind == CLASSICAL:
            payload = {"kind": self.kind, "formula": self.formulas[0], "answer": self.answers[0]}
        else:
            payload = {"kind": self.kind, "formula": list(self.formulas), "answer": list(self.answers)}
        return json.dumps(payload)


@dataclass
class CountedOracle:
    """SAT oracle that logs every query it answers.

    One quantum application is charged as a single query even though the
    simulation has to decide both superposed formulas.
    """

    solver: Solver = "dpll"
    log: list[QueryRecord] = field(default_factory=list)
    # optional answer memo shared between oracles of one sweep, keyed by
    # serialized formula; charging is unaffected
    cache: Optional[dict[str, int]] = field(default=None, repr=False)

    @property
    def count(self) -> int:
        return len(self.log)

    def _answer(self, f: Formula) -> tuple[str, int]:
        key = serialize_expr(f)
        if self.cache is None:
            return key, _decide(self.solver, f)
        if key not in self.cache:
            self.cache[key] = _decide(self.solver, f)
        return key, self.cache[key]

    def classical_query(self, f: Formula) -> int:
        key, answer = self._answer(f)
        self.log.append(QueryRecord(CLASSICAL, (key,), (answer,)))
        return answer

    def quantum_application_answers(self, q0: Formula, q1: Formula) -> tuple[int, int]:
        (k0, a0), (k1, a1) = self._answer(q0), self._answer(q1)
        self.log.append(QueryRecord(QUANTUM, (k0, k1), (a0, a1)))
        return a0, a1

    def count_kind(self, kind: str) -> int:
        return sum(1 for r in self.log if r.kind == kind)

    def export_jsonl(self) -> str:
        return "".join(r.to_json() + "\n" for r in self.log)


def table_oracle(answers: dict[Formula, int] | Iterable[tuple[Formula, int]]) -> CountedOracle:
    """Oracle answering from a fixed formula -> bit table; unknown formulas raise KeyError."""
    table = dict(answers)
    return CountedOracle(solver=lambda f: table[f])
