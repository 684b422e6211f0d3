"""Boolean formulas over positive-integer variables, plus the CNF carrier.

Formulas are immutable ASTs. CNF only appears at the solver boundary via
:func:`tseitin` and for DIMACS I/O.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class FormulaSyntaxError(ValueError):
    """Raised by :func:`parse_expr` with the offending character offset."""

    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class DimacsError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Not:
    child: Formula


@dataclass(frozen=True)
class And:
    children: tuple[Formula, ...]

    def __init__(self, *children: Formula) -> None:
        if len(children) < 2:
            raise ValueError("And needs at least two children")
        object.__setattr__(self, "children", tuple(children))


@dataclass(frozen=True)
class Or:
    children: tuple[Formula, ...]

    def __init__(self, *children: Formula) -> None:
        if len(children) < 2:
            raise ValueError("Or needs at least two children")
        object.__setattr__(self, "children", tuple(children))


@dataclass(frozen=True)
class ConstTrue:
    pass


@dataclass(frozen=True)
class ConstFalse:
    pass


Formula = Union[Var, Not, And, Or, ConstTrue, ConstFalse]

TRUE = ConstTrue()
FALSE = ConstFalse()


def max_var(f: Formula) -> int:
    """Largest variable index in ``f``, 0 if there is none."""
    stack = [f]
    best = 0
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            best = max(best, node.index)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or)):
            stack.extend(node.children)
    return best


def node_count(f: Formula) -> int:
    if isinstance(f, Not):
        return 1 + node_count(f.child)
    if isinstance(f, (And, Or)):
        return 1 + sum(node_count(c) for c in f.children)
    return 1


def evaluate(f: Formula, assignment) -> bool:
    """Evaluate ``f`` under ``assignment``, a mapping from index to bool."""
    if isinstance(f, Var):
        return bool(assignment[f.index])
    if isinstance(f, Not):
        return not evaluate(f.child, assignment)
    if isinstance(f, And):
        return all(evaluate(c, assignment) for c in f.children)
    if isinstance(f, Or):
        return any(evaluate(c, assignment) for c in f.children)
    return isinstance(f, ConstTrue)


# --- combinators -----------------------------------------------------------


def rename_offset(f: Formula, offset: int) -> Formula:
    if offset < 0:
        raise ValueError("offset must be nonnegative")
    if offset == 0:
        return f
    if isinstance(f, Var):
        return Var(f.index + offset)
    if isinstance(f, Not):
        return Not(rename_offset(f.child, offset))
    if isinstance(f, And):
        return And(*(rename_offset(c, offset) for c in f.children))
    if isinstance(f, Or):
        return Or(*(rename_offset(c, offset) for c in f.children))
    return f


def or_combine(a: Formula, b: Formula) -> Formula:
    """Single formula that is satisfiable iff ``a`` or ``b`` is.

    ``b`` is shifted past the variables of ``a`` so the two blocks are
    independent.
    """
    return Or(a, rename_offset(b, max_var(a)))


def and_combine(a: Formula, b: Formula) -> Formula:
    """Single formula that is satisfiable iff both ``a`` and ``b`` are."""
    return And(a, rename_offset(b, max_var(a)))


# --- expression syntax -----------------------------------------------------

_TOKEN = re.compile(r"x[0-9]+|true|false|[!&|()]")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group()
        if tok[0] == "x" and tok[1] == "0":
            raise FormulaSyntaxError(f"invalid variable {tok!r} (indices start at 1)", pos)
        tokens.append((tok, pos))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> str:
        return self.tokens[self.i][0]

    def fail(self, message: str):
        raise FormulaSyntaxError(message, self.tokens[self.i][1])

    def parse(self) -> Formula:
        f = self.expr()
        if self.tok != "":
            self.fail(f"unexpected {self.tok!r}")
        return f

    def expr(self) -> Formula:
        terms = [self.term()]
        while self.tok == "|":
            self.i += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Or(*terms)

    def term(self) -> Formula:
        factors = [self.factor()]
        while self.tok == "&":
            self.i += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else And(*factors)

    def factor(self) -> Formula:
        tok = self.tok
        if tok == "!":
            self.i += 1
            return Not(self.factor())
        if tok == "(":
            self.i += 1
            f = self.expr()
            if self.tok != ")":
                self.fail("expected ')'")
            self.i += 1
            return f
        if tok.startswith("x"):
            self.i += 1
            return Var(int(tok[1:]))
        if tok in ("true", "false"):
            self.i += 1
            return TRUE if tok == "true" else FALSE
        self.fail("expected variable, '!' or '('" if tok else "unexpected end of input")


def parse_expr(text: str) -> Formula:
    """Parse ``x1 | (x2 & !x3)`` style text; precedence is ``!`` > ``&`` > ``|``."""
    return _Parser(text).parse()


def serialize_expr(f: Formula) -> str:
    if isinstance(f, Var):
        return f"x{f.index}"
    if isinstance(f, Not):
        return "!" + serialize_expr(f.child)
    if isinstance(f, And):
        return "(" + " & ".join(serialize_expr(c) for c in f.children) + ")"
    if isinstance(f, Or):
        return "(" + " | ".join(serialize_expr(c) for c in f.children) + ")"
    return "true" if isinstance(f, ConstTrue) else "false"


# --- CNF -------------------------------------------------------------------


@dataclass(frozen=True)
class CnfFormula:
    clauses: tuple[tuple[int, ...], ...]
    num_vars: int

    def __init__(self, clauses, num_vars: int | None = None) -> None:
        clauses = tuple(tuple(int(lit) for lit in c) for c in clauses)
        used = max((abs(lit) for c in clauses for lit in c), default=0)
        if num_vars is None:
            num_vars = used
        if num_vars < 0:
            raise ValueError("variable count must be nonnegative")
        for c in clauses:
            for lit in c:
                if lit == 0:
                    raise ValueError("literal 0 is not allowed in a clause")
                if abs(lit) > num_vars:
                    raise ValueError(f"literal {lit} exceeds variable count {num_vars}")
        object.__setattr__(self, "clauses", clauses)
        object.__setattr__(self, "num_vars", num_vars)


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"line {lineno}: negative count in header")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for field in line.split():
            try:
                lit = int(field)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {field!r}") from None
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > header[0]:
                raise DimacsError(
                    f"line {lineno}: literal {lit} exceeds declared variable count {header[0]}"
                )
            else:
                current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is missing its terminating 0")
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(clauses, header[0])


def serialize_dimacs(c: CnfFormula) -> str:
    lines = [f"p cnf {c.num_vars} {len(c.clauses)}"]
    lines += [" ".join(map(str, clause + (0,))) for clause in c.clauses]
    return "\n".join(lines) + "\n"


def _literal(lit: int) -> Formula:
    return Var(lit) if lit > 0 else Not(Var(-lit))


def cnf_to_formula(c: CnfFormula) -> Formula:
    parts: list[Formula] = []
    for clause in c.clauses:
        if not clause:
            parts.append(FALSE)
        elif len(clause) == 1:
            parts.append(_literal(clause[0]))
        else:
            parts.append(Or(*map(_literal, clause)))
    if not parts:
        return TRUE
    return parts[0] if len(parts) == 1 else And(*parts)


def tseitin(f: Formula) -> CnfFormula:
    """Equisatisfiable CNF with one fresh variable per And/Or/constant node.

    Original variables keep their indices; fresh ones start above
    ``max_var(f)``. Negation is folded into the literal.
    """
    clauses: list[tuple[int, ...]] = []
    next_var = max_var(f)

    def fresh() -> int:
        nonlocal next_var
        next_var += 1
        return next_var

    def encode(node: Formula) -> int:
        if isinstance(node, Var):
            return node.index
        if isinstance(node, Not):
            return -encode(node.child)
        if isinstance(node, (ConstTrue, ConstFalse)):
            v = fresh()
            clauses.append((v,) if isinstance(node, ConstTrue) else (-v,))
            return v
        lits = [encode(c) for c in node.children]
        v = fresh()
        if isinstance(node, And):
            clauses.extend((-v, lit) for lit in lits)
            clauses.append((v, *(-lit for lit in lits)))
        else:
            clauses.extend((v, -lit) for lit in lits)
            clauses.append((-v, *lits))
        return v

    clauses.append((encode(f),))
    return CnfFormula(clauses, next_var)
