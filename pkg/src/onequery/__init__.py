"""One quantum SAT query in place of two non-adaptive classical ones."""

from .dispatch import TruthTable2, accepting_set, eval_classical_two_query, execute, select_protocol
from .formula import (
    FALSE,
    TRUE,
    And,
    CnfFormula,
    ConstFalse,
    ConstTrue,
    Not,
    Or,
    Var,
    and_combine,
    or_combine,
    parse_dimacs,
    parse_expr,
    serialize_dimacs,
    serialize_expr,
    tseitin,
)
from .oracle import CountedOracle, brute_force_sat, dpll_sat
from .qsim import ExactAmp, run_deutsch_and_not, run_deutsch_xor

__version__ = "0.1.0"
