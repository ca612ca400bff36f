"""Proof terms over dynamic formulas and their checker.

A proof term is a tuple of instructions ending in a single ``Qed``.  The
checker keeps a database of derived constraints and a set of goals; no
instruction ever removes anything from the database, which is what makes
accepted proofs robust to extra premises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .core import Formula
from .dynamics import contextualize, has_prefix, lift, prepend_context, static_fragment
from .implication import DEFAULT_BUDGET, dyn_implies


@dataclass(frozen=True)
class Qed:
    pass


@dataclass(frozen=True)
class Elim:
    pass


@dataclass(frozen=True)
class Lem:
    lemmas: Formula
    sub: tuple


@dataclass(frozen=True)
class Ctx:
    program: tuple
    sub: tuple


Instruction = Union[Qed, Elim, Lem, Ctx]


class MalformedProof(ValueError):
    pass


def check_well_formed(term: Iterable[Instruction]) -> None:
    term = tuple(term)
    if not term:
        raise MalformedProof("empty proof term")
    for idx, ins in enumerate(term):
        if isinstance(ins, Qed):
            if idx != len(term) - 1:
                raise MalformedProof(f"qed at position {idx} is not the last instruction")
        elif isinstance(ins, (Lem, Ctx)):
            check_well_formed(ins.sub)
        elif not isinstance(ins, Elim):
            raise MalformedProof(f"unknown instruction {ins!r}")
    if not isinstance(term[-1], Qed):
        raise MalformedProof("proof term does not end in qed")


@dataclass(frozen=True)
class CheckState:
    database: Formula
    goals: Formula


@dataclass
class ProofResult:
    accepted: bool
    path: tuple[int, ...] = ()
    goal: object = None
    failing_leaf: tuple | None = None

    def __bool__(self) -> bool:
        return self.accepted


class ProofRejected(Exception):
    def __init__(self, path, goal, leaf):
        super().__init__(f"goal {goal} not derived at instruction {path}")
        self.path = path
        self.goal = goal
        self.leaf = leaf


class Checker:
    """Runs proof terms; one instance may check many terms."""

    def __init__(self, budget: int = DEFAULT_BUDGET, trace: bool = False):
        self.budget = budget
        self.trace = trace
        self.traces: list[tuple[tuple[int, ...], object, object]] = []

    def _prove_all(self, premises: Formula, goals: Iterable, path) -> None:
        for goal in goals:
            result = dyn_implies(premises, goal, self.budget, trace=self.trace)
            if self.trace:
                self.traces.append((path, goal, result.trace))
            if not result.accepted:
                raise ProofRejected(path, goal, result.failing_leaf)

    def step(self, ins: Instruction, state: CheckState, path=()) -> CheckState:
        """Execute one non-final instruction and return the successor state."""
        db, goals = state.database, state.goals
        if isinstance(ins, Elim):
            down = Formula(g for g in goals if not g.context)
            self._prove_all(db, down, path)
            return CheckState(db | down, goals - down)
        if isinstance(ins, Lem):
            self.run(ins.sub, CheckState(db, ins.lemmas), path)
            return CheckState(db | ins.lemmas, goals - ins.lemmas)
        if isinstance(ins, Ctx):
            eps = ins.program
            inner_goals = contextualize(goals, eps)
            self.run(ins.sub, CheckState(contextualize(db, eps), inner_goals), path)
            remaining = Formula(g for g in goals if not has_prefix(g.context, eps))
            return CheckState(db | prepend_context(eps, inner_goals), remaining)
        raise MalformedProof(f"cannot step over {ins!r}")

    def run(self, term: tuple, state: CheckState, path=()) -> None:
        for idx, ins in enumerate(term):
            here = path + (idx,)
            if isinstance(ins, Qed):
                self._prove_all(lift(static_fragment(state.database)), state.goals, here)
                return
            state = self.step(ins, state, here)

    def check(self, term: tuple, database: Iterable, goals: Iterable) -> ProofResult:
        check_well_formed(term)
        state = CheckState(Formula(database), Formula(goals))
        try:
            self.run(tuple(term), state)
        except ProofRejected as exc:
            return ProofResult(False, exc.path, exc.goal, exc.leaf)
        return ProofResult(True)


def check_proof(term: tuple, database: Iterable, goals: Iterable,
                budget: int = DEFAULT_BUDGET) -> ProofResult:
    return Checker(budget).check(term, database, goals)


def lemma_chain(parts: Iterable[tuple[Formula, tuple]]) -> tuple:
    """``lem(Δ1, π1) ... lem(Δn, πn) qed`` from (goals, proof) pairs."""
    return tuple(Lem(Formula(goals), tuple(term)) for goals, term in parts) + (Qed(),)
