"""Random builders for small formulas, programs, derivations and proofs."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from dynproof.core import BOT, TOP, Constraint, Formula, Substitution, clause, cube
from dynproof.dsr import Del, Rup, Sr, Wsr, accumulated, check_instruction, context_of
from dynproof.dynamics import (
    Assign,
    Branch,
    Choice,
    DynConstraint,
    Test,
    contextualize,
    lift,
    prepend_context,
    static,
    static_fragment,
)
from dynproof.oracle import entails, eval_static, evaluate, models, universe_of
from dynproof.proofs import Ctx, Elim, Lem, Qed, check_proof


def lit(rng: random.Random, nvars: int, consts: float = 0.05) -> int:
    if rng.random() < consts:
        return rng.choice((TOP, BOT))
    v = rng.randint(1, nvars)
    return v if rng.random() < 0.5 else -v


def constraint(rng, nvars, maxlen=3, cube_p=0.3, consts=0.05) -> Constraint:
    lits = [lit(rng, nvars, consts) for _ in range(rng.randint(0 if rng.random() < 0.05 else 1, maxlen))]
    return cube(*lits) if rng.random() < cube_p else clause(*lits)


def a_clause(rng, nvars, maxlen=3) -> Constraint:
    return constraint(rng, nvars, maxlen, cube_p=0.0, consts=0.0)


def subst(rng, nvars, consts=0.2) -> Substitution:
    dom = rng.sample(range(1, nvars + 1), rng.randint(0, min(nvars, 3)))
    return Substitution({v: lit(rng, nvars, consts) for v in dom})


def item(rng, nvars, depth=1):
    kinds = ["assign", "test"] + (["choice", "branch"] if depth > 0 else [])
    kind = rng.choice(kinds)
    if kind == "assign":
        return Assign(subst(rng, nvars))
    if kind == "test":
        return Test(constraint(rng, nvars, 2))
    sub = lambda: program(rng, nvars, 1, depth - 1)  # noqa: E731
    if kind == "choice":
        return Choice(sub(), sub())
    return Branch(constraint(rng, nvars, 2), sub(), sub())


def program(rng, nvars, max_items=3, depth=1) -> tuple:
    return tuple(item(rng, nvars, depth) for _ in range(rng.randint(0, max_items)))


def dyn(rng, nvars, max_items=3, static_p=0.4) -> DynConstraint:
    ctx = () if rng.random() < static_p else program(rng, nvars, max_items)
    return DynConstraint(ctx, constraint(rng, nvars))


def dynformula(rng, nvars, max_n=4, max_items=3, static_p=0.4) -> Formula:
    return Formula(dyn(rng, nvars, max_items, static_p) for _ in range(rng.randint(0, max_n)))


def cnf(rng, nvars, max_n=4, maxlen=3) -> Formula:
    return Formula(a_clause(rng, nvars, maxlen) for _ in range(rng.randint(0, max_n)))


def weaken(rng, nvars, c: DynConstraint) -> DynConstraint:
    """A constraint implied by ``c``: extra disjunct or dropped conjunct."""
    p = c.prop
    if p.is_clause:
        p = clause(*p.lits, lit(rng, nvars, 0.0))
    elif p.lits:
        p = cube(*p.lits[1:])
    return DynConstraint(c.context, p)


# ----------------------------------------------------------- derivations

def instruction(rng, formula: Formula, nvars: int, kind: str | None = None):
    kind = kind or rng.choice(("del", "rup", "sr", "wsr"))
    members = list(formula)
    if kind == "del":
        return Del(rng.choice(members) if members and rng.random() < 0.8 else a_clause(rng, nvars))
    c = a_clause(rng, nvars)
    if kind == "rup":
        return Rup(c)
    sigma = subst(rng, nvars, consts=0.4)
    if kind == "sr":
        return Sr(c, sigma)
    removed = Formula(x for x in members if rng.random() < 0.4)
    return Wsr(c, sigma, removed)


def valid_instruction(rng, formula, nvars, kind=None, tries=400):
    for _ in range(tries):
        ins = instruction(rng, formula, nvars, kind)
        if check_instruction(formula, ins):
            return ins
    return None


def derivation(rng, nvars=5, max_len=4):
    """A random formula with a valid derivation of 1..max_len steps."""
    f = cnf(rng, nvars, max_n=5)
    proof, acc = [], f
    for _ in range(rng.randint(1, max_len)):
        ins = valid_instruction(rng, acc, nvars, tries=100)
        if ins is None:
            break
        proof.append(ins)
        acc = accumulated(acc, [ins])
    return f, proof


def models_carry_over(formula, ins) -> bool:
    """Every model I of F maps to a model J of the accumulated formula.

    J is I when the step adds nothing new for I, else I∘σ.
    """
    after = accumulated(formula, [ins])
    extra = ins.witness.variables() if isinstance(ins, (Sr, Wsr)) else ()
    u = universe_of(formula, after, [ins.clause], extra=extra)
    for i in models(formula, u):
        j = i
        if isinstance(ins, (Sr, Wsr)) and not eval_static(i, ins.clause):
            j = i.after(ins.witness)
        if not evaluate(j, after):
            return False
    return True


def context_entails_result(formula, proof) -> bool:
    goal = prepend_context(context_of(proof), lift(accumulated(formula, proof)))
    return entails(lift(formula), goal, universe_of(formula, goal, extra=[1]))


# ----------------------------------------------------------- proof terms

def accepted_instance(rng, nvars=4, tries=200):
    """A random (term, database, goals) triple that the checker accepts."""
    for _ in range(tries):
        db = dynformula(rng, nvars, max_n=5, max_items=2, static_p=0.5)
        members = list(db)
        if not members:
            continue
        shape = rng.choice(("qed", "elim", "lem", "ctx"))
        if shape == "qed":
            statics = [c for c in members if not c.context]
            if not statics:
                continue
            pick = rng.choice(statics)
            goals = Formula([weaken(rng, nvars, pick)])
            if rng.random() < 0.5:
                goals = prepend_context(program(rng, nvars, 2), goals)
            term = (Qed(),)
        elif shape == "elim":
            dyns = [c for c in members if c.context]
            if not dyns:
                continue
            goals = Formula([DynConstraint((), constraint(rng, nvars, 3))])
            term = (Elim(), Qed())
        elif shape == "lem":
            statics = [c for c in members if not c.context]
            if not statics:
                continue
            lemma = Formula([weaken(rng, nvars, rng.choice(statics))])
            goals = Formula([weaken(rng, nvars, next(iter(lemma)))])
            term = (Lem(lemma, (Qed(),)), Qed())
        else:
            dyns = [c for c in members if c.context]
            if not dyns:
                continue
            eps = rng.choice(dyns).context[:1]
            inner = contextualize(db, eps)
            inner_static = [c for c in inner if not c.context]
            if not inner_static:
                continue
            goals = prepend_context(eps, [weaken(rng, nvars, rng.choice(inner_static))])
            term = (Ctx(eps, (Qed(),)), Qed())
        if check_proof(term, db, goals):
            return term, db, goals
    raise RuntimeError("no accepted instance found")


# ----------------------------------------------------------- hypothesis

NVARS = 4


@st.composite
def literals(draw, nvars=NVARS, consts=True):
    if consts and draw(st.integers(0, 19)) == 0:
        return draw(st.sampled_from((TOP, BOT)))
    v = draw(st.integers(1, nvars))
    return v if draw(st.booleans()) else -v


@st.composite
def constraints(draw, nvars=NVARS, maxlen=3):
    lits = draw(st.lists(literals(nvars), max_size=maxlen))
    return cube(*lits) if draw(st.booleans()) else clause(*lits)


@st.composite
def substitutions(draw, nvars=NVARS):
    dom = draw(st.lists(st.integers(1, nvars), unique=True, max_size=3))
    return Substitution({v: draw(literals(nvars)) for v in dom})


def seeded(builder, *args, **kwargs):
    """Hypothesis strategy over a seeded random builder."""
    return st.integers(0, 2**32 - 1).map(lambda s: builder(random.Random(s), *args, **kwargs))


__all__ = [
    "lit", "constraint", "a_clause", "subst", "item", "program", "dyn", "dynformula", "cnf",
    "weaken", "instruction", "valid_instruction", "derivation", "models_carry_over", "context_entails_result", "accepted_instance", "literals", "constraints",
    "substitutions", "seeded", "lift", "static", "static_fragment",
]
