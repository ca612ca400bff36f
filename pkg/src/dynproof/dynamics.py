"""Programs, dynamic constraints and the operations on dynamic formulas.

A program is a tuple of items.  A dynamic constraint ``ε.C`` states that
the static constraint ``C`` holds after every execution of ``ε``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .core import Constraint, Formula, Substitution


@dataclass(frozen=True)
class Assign:
    subst: Substitution


@dataclass(frozen=True)
class Test:
    cond: Constraint

    __test__ = False  # not a pytest class


@dataclass(frozen=True)
class Choice:
    left: tuple
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))


@dataclass(frozen=True)
class Branch:
    """``if cond then then_ else orelse``; ``orelse`` defaults to the no-op."""

    cond: Constraint
    then_: tuple
    orelse: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "then_", tuple(self.then_))
        object.__setattr__(self, "orelse", tuple(self.orelse))


ProgramItem = Union[Assign, Test, Choice, Branch]
Program = tuple  # of ProgramItem


def size(program: Iterable[ProgramItem]) -> int:
    total = 0
    for item in program:
        total += 1
        if isinstance(item, Choice):
            total += size(item.left) + size(item.right)
        elif isinstance(item, Branch):
            total += size(item.then_) + size(item.orelse)
    return total


def program_variables(program: Iterable[ProgramItem]) -> set[int]:
    out: set[int] = set()
    for item in program:
        if isinstance(item, Assign):
            out |= item.subst.variables()
        elif isinstance(item, Test):
            out |= item.cond.variables()
        elif isinstance(item, Choice):
            out |= program_variables(item.left) | program_variables(item.right)
        else:
            out |= item.cond.variables()
            out |= program_variables(item.then_) | program_variables(item.orelse)
    return out


@dataclass(frozen=True)
class DynConstraint:
    context: tuple
    prop: Constraint

    def __post_init__(self):
        object.__setattr__(self, "context", tuple(self.context))

    @property
    def is_static(self) -> bool:
        return not self.context

    def variables(self) -> set[int]:
        return program_variables(self.context) | self.prop.variables()


def static(c: Constraint) -> DynConstraint:
    return DynConstraint((), c)


def lift(formula: Iterable[Constraint]) -> Formula:
    """View a static formula as a dynamic formula with empty contexts."""
    return Formula(static(c) for c in formula)


def formula_variables(formula: Iterable) -> set[int]:
    out: set[int] = set()
    for c in formula:
        out |= c.variables()
    return out


def has_prefix(context: tuple, prefix: tuple) -> bool:
    return context[: len(prefix)] == prefix


def prepend_context(prefix: Iterable[ProgramItem], formula: Iterable[DynConstraint]) -> Formula:
    prefix = tuple(prefix)
    return Formula(DynConstraint(prefix + c.context, c.prop) for c in formula)


def contextualize(formula: Iterable[DynConstraint], prefix: Iterable[ProgramItem]) -> Formula:
    prefix = tuple(prefix)
    n = len(prefix)
    return Formula(DynConstraint(c.context[n:], c.prop) for c in formula if has_prefix(c.context, prefix))


def static_fragment(formula: Iterable[DynConstraint]) -> Formula:
    return Formula(c.prop for c in formula if not c.context)


def reduce_program(program: Iterable[ProgramItem], tau: Substitution) -> tuple:
    """Program ρ with ``I ⊗ J ⊨ ρ`` iff ``(I∘τ) ⊗ J ⊨ program``."""
    program = tuple(program)
    if not program:
        return (Assign(tau),)
    head, rest = program[0], program[1:]
    if isinstance(head, Assign):
        return (Assign(tau.compose(head.subst)),) + rest
    if isinstance(head, Test):
        # τ must survive the test for the remaining items
        return (Test(head.cond.reduce(tau)), Assign(tau)) + rest
    if isinstance(head, Choice):
        return (Choice(reduce_program(head.left, tau), reduce_program(head.right, tau)),) + rest
    return (Branch(head.cond.reduce(tau), reduce_program(head.then_, tau),
                   reduce_program(head.orelse, tau)),) + rest


def reduce_dynconstraint(c: DynConstraint, tau: Substitution) -> DynConstraint:
    if not c.context:
        return DynConstraint((), c.prop.reduce(tau))
    return DynConstraint(reduce_program(c.context, tau), c.prop)


def reduce_dynformula(formula: Iterable[DynConstraint], tau: Substitution) -> Formula:
    return Formula(reduce_dynconstraint(c, tau) for c in formula)


def desugar_branch(item: Branch) -> Choice:
    return Choice((Test(item.cond),) + item.then_, (Test(item.cond.negate()),) + item.orelse)
