"""Unit propagation over clauses and cubes, used as conflict detection."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .core import BOT, TOP, Constraint

CONFLICT = "conflict"
NO_CONFLICT = "no-conflict"


@dataclass(frozen=True)
class PropagationResult:
    outcome: str
    implied: tuple[int, ...]

    @property
    def conflict(self) -> bool:
        return self.outcome == CONFLICT


def unit_propagate(formula: Iterable[Constraint]) -> PropagationResult:
    """Propagate units to fixpoint with per-clause false-literal counters.

    Cubes assert each literal.  A clause with ``TOP`` or a complementary
    pair is satisfied and skipped; ``BOT`` literals are dropped from clauses.
    """
    value: dict[int, bool] = {}
    implied: list[int] = []
    queue: list[int] = []
    clauses: list[tuple[int, ...]] = []

    def assign(lit: int) -> bool:
        var = abs(lit)
        want = lit > 0
        have = value.get(var)
        if have is None:
            value[var] = want
            implied.append(lit)
            queue.append(lit)
            return True
        return have == want

    def done(outcome):
        return PropagationResult(outcome, tuple(implied))

    for c in formula:
        if c.is_cube:
            for lit in c.lits:
                if lit == TOP:
                    continue
                if lit == BOT or not assign(lit):
                    return done(CONFLICT)
            continue
        lits = c.lits
        if TOP in lits:
            continue
        lits = tuple(l for l in lits if l != BOT)
        present = set(lits)
        if any(-l in present for l in lits):
            continue
        if not lits:
            return done(CONFLICT)
        clauses.append(lits)

    # occurrence lists: literal -> clauses containing it
    occurs: dict[int, list[int]] = defaultdict(list)
    n_false = [0] * len(clauses)
    satisfied = [False] * len(clauses)
    for idx, lits in enumerate(clauses):
        for lit in lits:
            occurs[lit].append(idx)

    for idx, lits in enumerate(clauses):
        if len(lits) == 1 and not assign(lits[0]):
            return done(CONFLICT)

    head = 0
    while head < len(queue):
        lit = queue[head]
        head += 1
        for idx in occurs.get(lit, ()):
            satisfied[idx] = True
        for idx in occurs.get(-lit, ()):
            n_false[idx] += 1
            if satisfied[idx]:
                continue
            lits = clauses[idx]
            remaining = len(lits) - n_false[idx]
            if remaining == 0:
                return done(CONFLICT)
            if remaining == 1:
                unit = None
                for l in lits:
                    v = value.get(abs(l))
                    if v is None:
                        unit = l
                        break
                    if v == (l > 0):
                        satisfied[idx] = True
                        break
                if unit is not None and not assign(unit):
                    return done(CONFLICT)
    return done(NO_CONFLICT)


def conflict(formula: Iterable[Constraint]) -> bool:
    return unit_propagate(formula).conflict


def rup_check(formula: Iterable[Constraint], c: Constraint) -> bool:
    """True iff propagation on the formula plus the negation of ``c`` conflicts."""
    return conflict([*formula, c.negate()])
