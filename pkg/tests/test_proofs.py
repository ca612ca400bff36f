import random

import pytest
from hypothesis import given, settings

from dynproof.core import Formula, Substitution, clause
from dynproof.dynamics import (
    Assign,
    DynConstraint,
    Test,
    contextualize,
    has_prefix,
    lift,
    prepend_context,
    static,
)
from dynproof.implication import BudgetExceeded
from dynproof.oracle import entails
from dynproof.proofs import (
    CheckState,
    Checker,
    Ctx,
    Elim,
    Lem,
    MalformedProof,
    ProofRejected,
    Qed,
    check_proof,
    check_well_formed,
    lemma_chain,
)

import gen

X, Y, Z = 1, 2, 3
QED = (Qed(),)


def dc(ctx, prop):
    return DynConstraint(tuple(ctx), prop)


def test_qed_trivial():
    assert check_proof(QED, [static(clause(X))], [static(clause(X))]).accepted


def test_qed_empty_goals():
    assert check_proof(QED, [], []).accepted


def test_qed_sees_only_static_fragment():
    t = (Test(clause(Y)),)
    db, goals = [dc(t, clause(X))], [dc(t, clause(X))]
    res = check_proof(QED, db, goals)
    assert not res.accepted
    assert res.path == (0,)
    assert check_proof((Ctx(t, QED), Qed()), db, goals).accepted


def test_elim_uses_possibility():
    sigma = Substitution({X: -Y})
    db = [dc([Assign(sigma)], clause(X))]
    goal = [static(clause(-Y))]
    assert not check_proof(QED, db, goal).accepted
    assert check_proof((Elim(), Qed()), db, goal).accepted


def test_lem_adds_and_discharges():
    db = Formula([static(clause(X)), static(clause(-X, Y))])
    lemma = Formula([static(clause(Y))])
    goals = Formula([static(clause(Y)), static(clause(Y, Z))])
    term = (Lem(lemma, QED), Qed())
    assert check_proof(term, db, goals).accepted
    state = Checker().step(term[0], CheckState(db, goals))
    assert state == CheckState(db | lemma, Formula([static(clause(Y, Z))]))


def test_rejection_path_is_nested():
    bad = Formula([static(clause(Z))])
    term = (Lem(Formula([static(clause(X))]), QED), Lem(bad, (Elim(), Qed())), Qed())
    res = check_proof(term, [static(clause(X))], [])
    assert not res.accepted
    assert res.path == (1, 0)  # the elim inside the second lem
    assert res.goal == static(clause(Z))
    assert res.failing_leaf == (Formula([clause(X)]), clause(Z))


def test_ctx_moves_goals():
    eps = (Assign(Substitution({X: Y})),)
    db = Formula([dc(eps, clause(X)), static(clause(Z))])
    goals = Formula([dc(eps, clause(X, Z)), static(clause(Z))])
    state = Checker().step(Ctx(eps, QED), CheckState(db, goals))
    assert state.goals == Formula([static(clause(Z))])
    assert state.database == db | [dc(eps, clause(X, Z))]


def test_malformed():
    for term in [(), (Qed(), Qed()), (Elim(),), (Lem(Formula(), ()), Qed()), (Ctx((), (Elim(),)), Qed())]:
        with pytest.raises(MalformedProof):
            check_well_formed(term)
    with pytest.raises(MalformedProof):
        check_proof((Qed(), Elim()), [], [])


def test_budget_propagates():
    from dynproof.dynamics import Choice
    p = tuple(Choice((Test(clause(X)),), (Test(clause(-X)),)) for _ in range(8))
    with pytest.raises(BudgetExceeded):
        check_proof(QED, [], [dc(p, clause(Y, -Y))], budget=10)


def test_lemma_chain_shape():
    a, b = Formula([static(clause(X))]), Formula([static(clause(Y))])
    term = lemma_chain([(a, QED), (b, (Elim(), Qed()))])
    assert term == (Lem(a, QED), Lem(b, (Elim(), Qed())), Qed())


@settings(max_examples=150)
@given(gen.seeded(gen.accepted_instance))
def test_soundness(inst):
    term, db, goals = inst
    assert entails(db, goals)


@given(gen.seeded(gen.accepted_instance), gen.seeded(lambda rng: gen.dynformula(rng, 4, 5)))
def test_non_interference(inst, extra):
    term, db, goals = inst
    assert check_proof(term, db | extra, goals).accepted


def _batch(rng):
    return [gen.accepted_instance(rng) for _ in range(rng.randint(2, 4))]


@given(gen.seeded(_batch))
def test_compositionality(batch):
    term = lemma_chain((goals, t) for t, _, goals in batch)
    db = Formula(c for _, d, _ in batch for c in d)
    goals = Formula(c for _, _, g in batch for c in g)
    assert check_proof(term, db, goals).accepted


def _state_and_ins(rng):
    db = gen.dynformula(rng, 4, 5, 2)
    goals = gen.dynformula(rng, 4, 4, 2)
    members = list(db) + list(goals)
    kind = rng.choice(("elim", "lem", "ctx"))
    if kind == "elim":
        ins = Elim()
    elif kind == "lem":
        ins = Lem(Formula(rng.sample(members, min(len(members), 2))), QED)
    else:
        ctxs = [c.context for c in members if c.context]
        eps = rng.choice(ctxs)[:1] if ctxs else gen.program(rng, 4, 1)
        ins = Ctx(eps, QED)
    return CheckState(db, goals), ins


@settings(max_examples=200)
@given(gen.seeded(_state_and_ins))
def test_scope_discipline(case):
    state, ins = case
    checker = Checker()
    try:
        after = checker.step(ins, state)
    except ProofRejected:  # sub-proof failed, nothing to compare
        return
    db, goals = state.database, state.goals
    assert db <= after.database and after.goals <= goals
    if isinstance(ins, Elim):
        down = Formula(g for g in goals if not g.context)
        assert after == CheckState(db | down, goals - down)
    elif isinstance(ins, Lem):
        assert after == CheckState(db | ins.lemmas, goals - ins.lemmas)
    else:
        moved = Formula(g for g in goals if has_prefix(g.context, ins.program))
        assert moved == prepend_context(ins.program, contextualize(goals, ins.program))
        assert after == CheckState(db | moved, goals - moved)


def test_accepted_instances_cover_every_shape():
    rng = random.Random(3)
    heads = {type(gen.accepted_instance(rng)[0][0]).__name__ for _ in range(60)}
    assert heads == {"Qed", "Elim", "Lem", "Ctx"}


def test_lifted_static_refutation():
    f = lift([clause(X), clause(-X)])
    assert check_proof(QED, f, [static(clause())]).accepted
