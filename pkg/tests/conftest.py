import itertools
import random

import pytest
from hypothesis import strategies as st

from onequery.formula import FALSE, TRUE, And, Not, Or, Var, evaluate, max_var


def naive_models(f, n=None):
    """Reference model count over x1..xn (default n = max_var(f)), one assignment at a time."""
    n = max_var(f) if n is None else n
    total = 0
    for bits in itertools.product((False, True), repeat=n):
        if evaluate(f, dict(zip(range(1, n + 1), bits))):
            total += 1
    return total


def naive_sat(f):
    return int(naive_models(f) > 0)


def random_formula(rng: random.Random, max_vars: int, depth: int):
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.05:
            return TRUE
        if r < 0.1:
            return FALSE
        return Var(rng.randint(1, max_vars))
    kind = rng.choice(("not", "and", "or"))
    if kind == "not":
        return Not(random_formula(rng, max_vars, depth - 1))
    children = [random_formula(rng, max_vars, depth - 1) for _ in range(rng.randint(2, 3))]
    return And(*children) if kind == "and" else Or(*children)


leaves = st.one_of(st.just(TRUE), st.just(FALSE), st.integers(1, 6).map(Var))
formulas = st.recursive(
    leaves,
    lambda inner: st.one_of(
        inner.map(Not),
        st.lists(inner, min_size=2, max_size=3).map(lambda cs: And(*cs)),
        st.lists(inner, min_size=2, max_size=3).map(lambda cs: Or(*cs)),
    ),
    max_leaves=12,
)


@pytest.fixture(scope="session")
def small_formulas():
    from onequery.harness import enumerate_formulas

    # 44 formulas over x1, x2; any pair has at most 4 variables after renaming
    return enumerate_formulas(2, 3)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
