"""Exact simulation of the one-query Deutsch circuits.

The register is two labelled question slots times one answer qubit.
Amplitudes live in the ring of numbers ``(a + b*sqrt(2)) / 2**k``, so the
claim that a measurement outcome has probability one is checked by exact
equality rather than a tolerance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional

from .formula import Formula, and_combine, serialize_expr
from .oracle import CountedOracle


class NonDeterministicState(RuntimeError):
    """No measurement outcome has probability exactly one."""


@dataclass(frozen=True)
class ExactAmp:
    """The number ``(a + b*sqrt(2)) / 2**k`` in canonical form.

    Canonical means ``k >= 0`` and ``a``, ``b`` not both even unless
    ``k == 0``; zero is ``(0, 0, 0)``. Equal values have equal fields.
    """

    a: int
    b: int
    k: int = 0

    def __post_init__(self) -> None:
        a, b, k = self.a, self.b, self.k
        if not all(isinstance(v, int) for v in (a, b, k)):
            raise TypeError("ExactAmp components must be integers")
        while k < 0:
            a, b, k = 2 * a, 2 * b, k + 1
        if a == 0 and b == 0:
            k = 0
        while k > 0 and a % 2 == 0 and b % 2 == 0:
            a, b, k = a // 2, b // 2, k - 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "k", k)

    @classmethod
    def coerce(cls, x: ExactAmp | int) -> ExactAmp:
        if isinstance(x, ExactAmp):
            return x
        if isinstance(x, int):
            return cls(x, 0, 0)
        raise TypeError(f"cannot convert {type(x).__name__} to ExactAmp")

    def __add__(self, other: ExactAmp | int) -> ExactAmp:
        other = ExactAmp.coerce(other)
        k = max(self.k, other.k)
        s, t = 1 << (k - self.k), 1 << (k - other.k)
        return ExactAmp(self.a * s + other.a * t, self.b * s + other.b * t, k)

    __radd__ = __add__

    def __neg__(self) -> ExactAmp:
        return ExactAmp(-self.a, -self.b, self.k)

    def __sub__(self, other: ExactAmp | int) -> ExactAmp:
        return self + (-ExactAmp.coerce(other))

    def __rsub__(self, other: ExactAmp | int) -> ExactAmp:
        return ExactAmp.coerce(other) - self

    def __mul__(self, other: ExactAmp | int) -> ExactAmp:
        other = ExactAmp.coerce(other)
        # (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r
        return ExactAmp(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.k + other.k,
        )

    __rmul__ = __mul__

    def div_sqrt2(self) -> ExactAmp:
        # x / sqrt(2) = x * sqrt(2) / 2
        return ExactAmp(2 * self.b, self.a, self.k + 1)

    def __float__(self) -> float:
        return (self.a + self.b * 2 ** 0.5) / 2 ** self.k

    def __str__(self) -> str:
        return f"({self.a}{self.b:+d}√2)/2^{self.k}"

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.k)


ZERO = ExactAmp(0, 0)
ONE = ExactAmp(1, 0)
HALF = ExactAmp(1, 0, 1)
INV_SQRT2 = ONE.div_sqrt2()

# basis order: (slot 0, ans 0), (slot 0, ans 1), (slot 1, ans 0), (slot 1, ans 1)
BASIS = ((0, 0), (0, 1), (1, 0), (1, 1))


def _idx(slot: int, ans: int) -> int:
    return 2 * slot + ans


@dataclass(frozen=True)
class QState:
    amps: tuple[ExactAmp, ExactAmp, ExactAmp, ExactAmp]
    labels: tuple[Formula, Formula]

    def norm_squared(self) -> ExactAmp:
        total = ZERO
        for amp in self.amps:
            total = total + amp * amp
        return total

    def slot_probability(self, slot: int) -> ExactAmp:
        a0, a1 = self.amps[_idx(slot, 0)], self.amps[_idx(slot, 1)]
        return a0 * a0 + a1 * a1

    def to_json(self) -> list[list[int]]:
        return [list(a.as_tuple()) for a in self.amps]


def prepare(q0: Formula, q1: Formula) -> QState:
    """Uniform superposition of both slots with the answer qubit in |0>-|1>."""
    return QState((HALF, -HALF, HALF, -HALF), (q0, q1))


def apply_oracle(s: QState, o: CountedOracle) -> QState:
    """XOR each slot's oracle answer into the answer qubit (one query)."""
    answers = o.quantum_application_answers(*s.labels)
    amps = [ZERO] * 4
    for slot, ans in BASIS:
        amps[_idx(slot, ans ^ answers[slot])] = s.amps[_idx(slot, ans)]
    return QState(tuple(amps), s.labels)


def basis_change(s: QState) -> QState:
    """Hadamard on the question register; the answer qubit is untouched."""
    amps = [ZERO] * 4
    for ans in (0, 1):
        x, y = s.amps[_idx(0, ans)], s.amps[_idx(1, ans)]
        amps[_idx(0, ans)] = (x + y).div_sqrt2()
        amps[_idx(1, ans)] = (x - y).div_sqrt2()
    return QState(tuple(amps), s.labels)


def measure_question(s: QState) -> int:
    for bit in (0, 1):
        if s.slot_probability(bit) == ONE:
            return bit
    raise NonDeterministicState(
        "question register outcome probabilities are "
        f"{s.slot_probability(0)} and {s.slot_probability(1)}"
    )


Trace = Callable[[str, QState], None]


def _run(q0: Formula, q1: Formula, o: CountedOracle, trace: Optional[Trace]) -> int:
    steps = (("prepare", None), ("oracle", lambda s: apply_oracle(s, o)), ("basis_change", basis_change))
    state = prepare(q0, q1)
    for name, step in steps:
        if step is not None:
            state = step(state)
        if trace is not None:
            trace(name, state)
    return measure_question(state)


def run_deutsch_xor(a: Formula, b: Formula, o: CountedOracle, trace: Optional[Trace] = None) -> int:
    """O(a) XOR O(b) from one oracle application."""
    return _run(a, b, o, trace)


def run_deutsch_and_not(
    a: Formula, b: Formula, o: CountedOracle, trace: Optional[Trace] = None
) -> int:
    """O(a) AND NOT O(b), computed as O(a) XOR O(a & b) with one application."""
    return _run(a, and_combine(a, b), o, trace)


def json_trace(sink: list) -> Trace:
    """Trace callback appending one JSON-ready dict per circuit step."""

    def record(step: str, state: QState) -> None:
        sink.append(
            {
                "step": step,
                "labels": [serialize_expr(f) for f in state.labels],
                "amplitudes": state.to_json(),
            }
        )

    return record


def format_trace(sink: list) -> str:
    return "\n".join(json.dumps(entry) for entry in sink)
