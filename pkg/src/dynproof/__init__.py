"""Interference-free proof checking for SAT with dynamic (program-annotated) constraints."""

from .core import (
    BOT,
    FALSUM,
    TOP,
    Assignment,
    Constraint,
    Formula,
    Substitution,
    clause,
    complement,
    cube,
)
from .dsr import Del, Rup, Sr, Wsr, accumulated, check_refutation, context_of, translate, verify
from .dynamics import Assign, Branch, Choice, DynConstraint, Test, lift, static
from .implication import BudgetExceeded, dyn_implies
from .propagation import rup_check, unit_propagate
from .proofs import Ctx, Elim, Lem, Qed, check_proof

__version__ = "0.1.0"
