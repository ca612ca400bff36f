"""Interference-based DSR/WSR derivations and their translation to proof terms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .core import FALSUM, Constraint, Formula, Substitution
from .dynamics import Assign, Branch, DynConstraint, lift, prepend_context, static
from .propagation import conflict, rup_check
from .proofs import Ctx, Elim, Lem, Qed

STANDARD = "standard"
PAPER = "paper"
SR_VARIANTS = (STANDARD, PAPER)


@dataclass(frozen=True)
class Del:
    clause: Constraint


@dataclass(frozen=True)
class Rup:
    clause: Constraint


@dataclass(frozen=True)
class Sr:
    clause: Constraint
    witness: Substitution


@dataclass(frozen=True)
class Wsr:
    clause: Constraint
    witness: Substitution
    removed: Formula


DsrInstruction = Union[Del, Rup, Sr, Wsr]


def apply_instruction(formula: Formula, ins: DsrInstruction) -> Formula:
    if isinstance(ins, Del):
        return formula.remove(ins.clause)
    if isinstance(ins, Wsr):
        return (formula - ins.removed).add(ins.clause)
    return formula.add(ins.clause)


def accumulated(formula: Iterable[Constraint], proof: Iterable[DsrInstruction]) -> Formula:
    acc = Formula(formula)
    for ins in proof:
        acc = apply_instruction(acc, ins)
    return acc


def check_sr(formula: Iterable[Constraint], c: Constraint, sigma: Substitution,
             variant: str = STANDARD) -> bool:
    """Substitution redundancy of ``c`` over ``formula`` upon ``sigma``.

    ``standard`` checks ``F ∪ {¬C, ¬(C|σ)}`` for the clause itself; ``paper``
    checks the singleton ``{¬(C|σ)}`` instead.  Both then require a
    conflict on ``F ∪ {¬C, ¬(D|σ)}`` for every ``D`` in ``F``.
    """
    if variant not in SR_VARIANTS:
        raise ValueError(f"unknown SR variant {variant!r}")
    formula = list(formula)
    neg_c = c.negate()
    reduced_neg = c.reduce(sigma).negate()
    if variant == PAPER:
        if not conflict([reduced_neg]):
            return False
    elif not conflict([*formula, neg_c, reduced_neg]):
        return False
    return all(conflict([*formula, neg_c, d.reduce(sigma).negate()]) for d in formula)


def check_wsr(formula: Iterable[Constraint], c: Constraint, sigma: Substitution,
              removed: Iterable[Constraint]) -> bool:
    formula = Formula(formula)
    neg_c = c.negate()
    base = list(formula)
    targets = (formula - Formula(removed)).add(c)
    return all(conflict([*base, neg_c, d.reduce(sigma).negate()]) for d in targets)


def check_instruction(formula: Formula, ins: DsrInstruction, variant: str = STANDARD) -> bool:
    if isinstance(ins, Del):
        return True
    if isinstance(ins, Rup):
        return rup_check(formula, ins.clause)
    if isinstance(ins, Sr):
        return check_sr(formula, ins.clause, ins.witness, variant)
    if isinstance(ins, Wsr):
        return check_wsr(formula, ins.clause, ins.witness, ins.removed)
    raise TypeError(f"not a DSR instruction: {ins!r}")


@dataclass
class DerivationReport:
    valid: bool
    refutation: bool
    failed_at: int | None = None
    accumulated: Formula | None = None

    def __bool__(self) -> bool:
        return self.valid


def verify(formula: Iterable[Constraint], proof: Sequence[DsrInstruction],
           variant: str = STANDARD) -> DerivationReport:
    """Check every instruction against the formula accumulated before it."""
    acc = Formula(formula)
    for idx, ins in enumerate(proof):
        if not check_instruction(acc, ins, variant):
            return DerivationReport(False, False, idx, acc)
        acc = apply_instruction(acc, ins)
    return DerivationReport(True, conflict(acc), None, acc)


def check_derivation(formula, proof, variant: str = STANDARD) -> bool:
    return verify(formula, proof, variant).valid


def check_refutation(formula, proof, variant: str = STANDARD) -> bool:
    report = verify(formula, proof, variant)
    return report.valid and report.refutation


def step_program(ins: Sr | Wsr) -> tuple:
    """``if ¬C then ⟨σ⟩``: the program an SR/WSR step silently runs."""
    return (Branch(ins.clause.negate(), (Assign(ins.witness),)),)


def context_of(proof: Iterable[DsrInstruction]) -> tuple:
    program: tuple = ()
    for ins in proof:
        if isinstance(ins, (Sr, Wsr)):
            program += step_program(ins)
    return program


def translate(formula: Iterable[Constraint], proof: Sequence[DsrInstruction],
              goal: Constraint = FALSUM) -> tuple:
    """Proof term deriving ``goal`` (the empty clause by default) from ``formula``.

    RUP steps become lemmas, deletions vanish, and each SR/WSR step opens a
    ``ctx`` scope under its branch program, closed by ``elim``.  Built
    back to front so long proofs do not recurse.
    """
    acc = Formula(formula)
    segments = []  # (rup clauses before the step, SR/WSR step, formula after it)
    rups: list[Constraint] = []
    for ins in proof:
        if isinstance(ins, Rup):
            rups.append(ins.clause)
        elif isinstance(ins, (Sr, Wsr)):
            acc = apply_instruction(acc, ins)
            segments.append((rups, ins, acc))
            rups = []
            continue
        acc = apply_instruction(acc, ins)
    term: tuple = (Qed(),)
    term = _rup_prefix(rups) + term
    for seg_rups, ins, after in reversed(segments):
        eps = step_program(ins)
        inner = (
            Lem(prepend_context(eps, lift(after)), (Qed(),)),
            Ctx(eps, term),
            Qed(),
        )
        term = _rup_prefix(seg_rups) + (
            Lem(Formula([DynConstraint(eps, goal)]), inner),
            Elim(),
            Qed(),
        )
    return term


def _rup_prefix(clauses: Iterable[Constraint]) -> tuple:
    return tuple(Lem(Formula([static(c)]), (Qed(),)) for c in clauses)
