"""Reference semantics by exhaustive enumeration over small universes."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator

from .core import Assignment, Constraint
from .dynamics import Assign, Branch, Choice, DynConstraint, Test, formula_variables

MAX_VARS = 20


class UniverseTooLarge(ValueError):
    pass


def universe_of(*exprs: Iterable, extra: Iterable[int] = (), cap: int = MAX_VARS) -> tuple[int, ...]:
    """Sorted variables of the given formulas (iterables of constraints)."""
    found = set(extra)
    for e in exprs:
        found |= formula_variables(e)
    if len(found) > cap:
        raise UniverseTooLarge(f"{len(found)} variables exceed the oracle cap of {cap}")
    return tuple(sorted(found))


def assignments(universe: Iterable[int], cap: int = MAX_VARS) -> Iterator[Assignment]:
    universe = tuple(universe)
    if len(universe) > cap:
        raise UniverseTooLarge(f"{len(universe)} variables exceed the oracle cap of {cap}")
    for bits in product((False, True), repeat=len(universe)):
        yield Assignment(dict(zip(universe, bits)))


def eval_static(assignment: Assignment, c: Constraint) -> bool:
    if c.is_clause:
        return any(assignment.satisfies(l) for l in c.lits)
    return all(assignment.satisfies(l) for l in c.lits)


def transitions(assignment: Assignment, program: Iterable) -> set[Assignment]:
    current = {assignment}
    for item in program:
        nxt: set[Assignment] = set()
        for state in current:
            nxt |= _step(state, item)
        current = nxt
        if not current:
            break
    return current


def _step(state: Assignment, item) -> set[Assignment]:
    if isinstance(item, Assign):
        return {state.after(item.subst)}
    if isinstance(item, Test):
        return {state} if eval_static(state, item.cond) else set()
    if isinstance(item, Choice):
        return transitions(state, item.left) | transitions(state, item.right)
    if isinstance(item, Branch):
        arm = item.then_ if eval_static(state, item.cond) else item.orelse
        return transitions(state, arm)
    raise TypeError(f"not a program item: {item!r}")


def progresses(assignment: Assignment, program: Iterable) -> bool:
    return bool(transitions(assignment, program))


def eval_dynamic(assignment: Assignment, c: DynConstraint) -> bool:
    if not c.context:
        return eval_static(assignment, c.prop)
    return all(eval_static(j, c.prop) for j in transitions(assignment, c.context))


def evaluate(assignment: Assignment, formula: Iterable) -> bool:
    """Evaluate a formula of static or dynamic constraints."""
    for c in formula:
        ok = eval_dynamic(assignment, c) if isinstance(c, DynConstraint) else eval_static(assignment, c)
        if not ok:
            return False
    return True


def models(formula: Iterable, universe: Iterable[int] | None = None, cap: int = MAX_VARS) -> Iterator[Assignment]:
    formula = list(formula)
    if universe is None:
        universe = universe_of(formula, cap=cap)
    for a in assignments(universe, cap):
        if evaluate(a, formula):
            yield a


def satisfiable(formula: Iterable, universe: Iterable[int] | None = None, cap: int = MAX_VARS) -> bool:
    return next(models(formula, universe, cap), None) is not None


def entails(premises: Iterable, conclusions: Iterable, universe: Iterable[int] | None = None,
            cap: int = MAX_VARS) -> bool:
    premises, conclusions = list(premises), list(conclusions)
    if universe is None:
        universe = universe_of(premises, conclusions, cap=cap)
    return all(evaluate(a, conclusions) for a in models(premises, universe, cap))


def counterexample(premises: Iterable, conclusions: Iterable, universe: Iterable[int] | None = None,
                   cap: int = MAX_VARS) -> Assignment | None:
    premises, conclusions = list(premises), list(conclusions)
    if universe is None:
        universe = universe_of(premises, conclusions, cap=cap)
    for a in models(premises, universe, cap):
        if not evaluate(a, conclusions):
            return a
    return None
