"""Deterministic generator for the bundled DSR/WSR refutation corpus.

Run ``python -m dynproof.corpus DIR`` to (re)write ``DIR/<name>.cnf``,
``DIR/<name>.dsr`` and ``DIR/<name>.term``.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .core import BOT, TOP, Constraint, Formula, Substitution, clause
from .dsr import Del, Rup, Sr, Wsr, accumulated, translate, verify
from .formats import format_dimacs, format_dsr, format_term
from .propagation import unit_propagate


def dpll_rup(formula: Iterable[Constraint]) -> list[Constraint] | None:
    """RUP lemmas refuting ``formula``, or None if it is satisfiable.

    Each node of the DPLL tree contributes the clause negating its decision
    path, emitted after both children, so every lemma is RUP over the
    formula plus the lemmas before it.  The last lemma is the empty clause.
    """
    base = list(formula)
    order = sorted({abs(l) for c in base for l in c.lits if l not in (TOP, BOT)})
    lemmas: list[Constraint] = []

    def solve(decisions: tuple[int, ...]) -> bool:
        res = unit_propagate([*base, *lemmas, *(clause(d) for d in decisions)])
        if not res.conflict:
            assigned = {abs(l) for l in res.implied}
            free = [v for v in order if v not in assigned]
            if not free:
                return False
            v = free[0]
            if not solve(decisions + (v,)) or not solve(decisions + (-v,)):
                return False
        learned = clause(*(-d for d in decisions))
        if learned not in lemmas:
            lemmas.append(learned)
        return True

    return lemmas if solve(()) else None


def php(pigeons: int, holes: int) -> tuple[Formula, dict]:
    """Pigeonhole clauses; ``var[(p, h)]`` is 'pigeon p sits in hole h'."""
    var = {}
    for p in range(pigeons):
        for h in range(holes):
            var[(p, h)] = len(var) + 1
    cls = [clause(*(var[(p, h)] for h in range(holes))) for p in range(pigeons)]
    for h in range(holes):
        for p, q in combinations(range(pigeons), 2):
            cls.append(clause(-var[(p, h)], -var[(q, h)]))
    return Formula(cls), var


def pigeon_swap(var: dict, holes: int, p: int, q: int) -> Substitution:
    pairs = {}
    for h in range(holes):
        pairs[var[(p, h)]] = var[(q, h)]
        pairs[var[(q, h)]] = var[(p, h)]
    return Substitution(pairs)


def hole_swap(var: dict, pigeons: int, g: int, h: int) -> Substitution:
    pairs = {}
    for p in range(pigeons):
        pairs[var[(p, g)]] = var[(p, h)]
        pairs[var[(p, h)]] = var[(p, g)]
    return Substitution(pairs)


def block(x: int, y: int) -> Formula:
    """The four clauses over ``x, y``; unsatisfiable, symmetric under x<->y."""
    return Formula([clause(x, y), clause(x, -y), clause(-x, y), clause(-x, -y)])


def swap(x: int, y: int) -> Substitution:
    return Substitution({x: y, y: x})


def breaker(sigma: Substitution) -> Constraint:
    """``¬x ∨ σ(x)`` for the first variable moved by a swap."""
    x = sigma.domain()[0]
    return clause(-x, sigma(x))


def random_cnf(rng: random.Random, nvars: int, nclauses: int, width: int = 3) -> Formula:
    out = []
    while len(out) < nclauses:
        vs = rng.sample(range(1, nvars + 1), width)
        out.append(clause(*(v if rng.random() < 0.5 else -v for v in vs)))
    return Formula(out)


def random_unsat(rng: random.Random, nvars: int, ratio: float = 6.0) -> Formula:
    while True:
        f = random_cnf(rng, nvars, int(nvars * ratio))
        if dpll_rup(f) is not None:
            return f


@dataclass
class Entry:
    name: str
    formula: Formula
    proof: list
    tags: set[str] = field(default_factory=set)


def _finish(formula: Formula, steps: list) -> list:
    lemmas = dpll_rup(accumulated(formula, steps))
    if lemmas is None:
        raise ValueError("accumulated formula is satisfiable")
    return steps + [Rup(c) for c in lemmas]


def _sr_breakers(formula: Formula, witnesses: Iterable[Substitution]) -> list:
    """Greedily add SR symmetry breakers that remain valid."""
    steps: list = []
    for sigma in witnesses:
        cand = steps + [Sr(breaker(sigma), sigma)]
        if verify(formula, cand).valid:
            steps = cand
    return steps


def _with_deletions(formula: Formula, proof: list, every: int = 3) -> list:
    """Delete earlier lemmas while the proof stays a refutation."""
    out = list(proof)
    lemma_ids = [i for i, ins in enumerate(proof) if isinstance(ins, Rup) and ins.clause.lits]
    added = 0
    for n, i in enumerate(lemma_ids[:-2]):
        if n % every:
            continue
        pos = i + added + 3
        if pos >= len(out):
            break
        cand = out[:pos] + [Del(proof[i].clause)] + out[pos:]
        report = verify(formula, cand)
        if report.valid and report.refutation:
            out = cand
            added += 1
    return out


def _junk(core: Formula, fresh: int, rng: random.Random, count: int = 3) -> Formula:
    """Satisfiable extra clauses that break the core's symmetries."""
    core_vars = sorted({abs(l) for c in core for l in c.lits})
    out = []
    for k in range(count):
        v = rng.choice(core_vars)
        out.append(clause(v if k % 2 else -v, fresh + k))
    return Formula(out)


def _extension_steps(formula: Formula, rng: random.Random, count: int) -> list:
    """Define fresh ``e <-> a ∧ b`` via SR steps with constant witnesses."""
    nvars = max(abs(l) for c in formula for l in c.lits)
    steps = []
    for k in range(count):
        e = nvars + 1 + k
        a, b = rng.sample(range(1, nvars + 1), 2)
        a = a if rng.random() < 0.5 else -a
        b = b if rng.random() < 0.5 else -b
        steps += [
            Sr(clause(-e, a), Substitution({e: BOT})),
            Sr(clause(-e, b), Substitution({e: BOT})),
            Sr(clause(e, -a, -b), Substitution({e: TOP})),
        ]
    return steps


def build_corpus() -> list[Entry]:
    rng = random.Random(20240611)
    out: list[Entry] = []

    def add(name, formula, proof, *tags):
        report = verify(formula, proof)
        if not (report.valid and report.refutation):
            raise AssertionError(f"corpus entry {name} is not a valid refutation")
        kinds = {type(i).__name__.lower() for i in proof}
        out.append(Entry(name, formula, proof, set(tags) | kinds))

    b = block(1, 2)
    add("block-sr-swap", b, _finish(b, [Sr(breaker(swap(1, 2)), swap(1, 2))]), "swap")

    f32, v32 = php(3, 2)
    f43, v43 = php(4, 3)
    for name, f, v, p_n, h_n in (("php32", f32, v32, 3, 2), ("php43", f43, v43, 4, 3)):
        ps = pigeon_swap(v, h_n, 0, 1)
        hs = hole_swap(v, p_n, 0, 1)
        add(f"{name}-sr-pigeon", f, _finish(f, [Sr(breaker(ps), ps)]), "swap")
        add(f"{name}-sr-hole", f, _finish(f, [Sr(breaker(hs), hs)]), "swap")
        many = [pigeon_swap(v, h_n, i, j) for i, j in combinations(range(p_n), 2)]
        many += [hole_swap(v, p_n, g, h) for g, h in combinations(range(h_n), 2)]
        steps = _sr_breakers(f, many)
        add(f"{name}-sr-multi", f, _finish(f, steps), "swap")

    # WSR: symmetric core plus symmetry-breaking junk removed by the step
    for name, core, sigma in (
        ("block", b, swap(1, 2)),
        ("php32", f32, pigeon_swap(v32, 2, 0, 1)),
        ("php43", f43, pigeon_swap(v43, 3, 0, 1)),
        ("php43h", f43, hole_swap(v43, 4, 1, 2)),
    ):
        fresh = max(abs(l) for c in core for l in c.lits) + 1
        junk = _junk(core, fresh, rng)
        f = core | junk
        add(f"{name}-wsr-junk", f, _finish(f, [Wsr(breaker(sigma), sigma, junk)]), "swap")

    # the same junk, deleted up front so a plain SR step goes through
    for name, core, sigma in (
        ("block", b, swap(1, 2)),
        ("php32", f32, pigeon_swap(v32, 2, 1, 2)),
        ("php43", f43, hole_swap(v43, 4, 0, 2)),
    ):
        fresh = max(abs(l) for c in core for l in c.lits) + 1
        junk = _junk(core, fresh, rng)
        f = core | junk
        steps = [Del(c) for c in junk] + [Sr(breaker(sigma), sigma)]
        add(f"{name}-del-sr", f, _finish(f, steps), "swap")

    add("php43-rup-del", f43, _with_deletions(f43, _finish(f43, [])))
    ps = pigeon_swap(v43, 3, 2, 3)
    add("php43-sr-del", f43, _with_deletions(f43, _finish(f43, [Sr(breaker(ps), ps)])), "swap")

    for n in (10, 12, 14, 16):
        f = random_unsat(rng, n)
        add(f"rand{n}-rup-del", f, _with_deletions(f, _finish(f, [])))

    for n, k in ((10, 2), (12, 3), (14, 2)):
        f = random_unsat(rng, n)
        add(f"rand{n}-ext-sr", f, _finish(f, _extension_steps(f, rng, k)))

    f54, v54 = php(5, 4)
    ps = pigeon_swap(v54, 4, 0, 1)
    add("php54-sr-pigeon", f54, _finish(f54, [Sr(breaker(ps), ps)]), "swap")
    hs = hole_swap(v54, 5, 2, 3)
    junk = _junk(f54, 21, rng)
    add("php54-wsr-junk", f54 | junk, _finish(f54 | junk, [Wsr(breaker(hs), hs, junk)]), "swap")

    f = random_unsat(rng, 20)
    add("rand20-ext-sr", f, _finish(f, _extension_steps(f, rng, 3)))
    f = random_unsat(rng, 24)
    add("rand24-ext-del", f, _with_deletions(f, _finish(f, _extension_steps(f, rng, 3))))

    f = random_unsat(rng, 12)
    fresh = 13
    junk = _junk(f, fresh, rng, 2)
    g = f | junk
    add("rand12-wsr-drop", g, _finish(g, [Wsr(clause(fresh, fresh + 1), Substitution({fresh: TOP}), junk)]))
    return out


def write_corpus(directory: str | Path) -> list[Entry]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = build_corpus()
    for e in entries:
        (directory / f"{e.name}.cnf").write_text(format_dimacs(e.formula, [e.name]))
        (directory / f"{e.name}.dsr").write_text(format_dsr(e.proof))
        (directory / f"{e.name}.term").write_text(format_term(translate(e.formula, e.proof)) + "\n")
    return entries


if __name__ == "__main__":
    for entry in write_corpus(sys.argv[1] if len(sys.argv) > 1 else "corpus"):
        print(f"{entry.name:20s} {len(entry.proof):5d} steps  {','.join(sorted(entry.tags))}")
