"""Composing symmetry-breaking sub-proofs: where DSR fails and proof terms don't.

Each ``F_i`` is the four-clause block over its own pair ``(x_i, y_i)`` plus
padding clauses ``x_j ∨ ¬y_j ∨ w`` for every other ``j``, so all ``F_i``
share one variable set and ``F_i`` is symmetric under swapping ``x_i`` and
``y_i`` but under no other pair swap.  ``G_i`` appends a fresh ``z_i`` to
every clause of ``F_i``, and ``G`` joins all ``G_i`` with
``¬z_1 ∨ ... ∨ ¬z_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .core import Constraint, Formula, Substitution, clause
from .corpus import block, swap
from .dsr import Rup, Sr, translate
from .dynamics import lift
from .formats import format_dimacs, format_dsr, format_term
from .proofs import lemma_chain


@dataclass
class Scenario:
    n: int
    parts: list[Formula]           # the G_i
    combined: Formula              # G
    witnesses: list[Substitution]  # the swaps σ_i
    breakers: list[Constraint]     # B_i = ¬x_i ∨ y_i
    selectors: list[int]           # z_i
    derivations: list[list]        # DSR derivations of z_i from G_i
    naive: list                    # their concatenation, closed by the empty clause
    term: tuple                    # lem(z_1, ρ_1) ... lem(z_n, ρ_n) qed


def pair(i: int) -> tuple[int, int]:
    return 2 * i + 1, 2 * i + 2


def build(n: int = 3) -> Scenario:
    if n < 2:
        raise ValueError("the composition scenario needs at least two parts")
    w = 2 * n + 1
    zs = [w + 1 + i for i in range(n)]
    parts, witnesses, breakers, derivations = [], [], [], []
    for i in range(n):
        x, y = pair(i)
        padding = [clause(pair(j)[0], -pair(j)[1], w) for j in range(n) if j != i]
        f_i = block(x, y) | padding
        g_i = Formula(clause(*c.lits, zs[i]) for c in f_i)
        sigma = swap(x, y)
        b = clause(-x, y)
        parts.append(g_i)
        witnesses.append(sigma)
        breakers.append(b)
        derivations.append([Sr(b, sigma), Rup(clause(-x, zs[i])), Rup(clause(zs[i]))])
    selector_clause = clause(*(-z for z in zs))
    combined = Formula([c for g in parts for c in g]).add(selector_clause)
    naive = [ins for d in derivations for ins in d] + [Rup(clause())]
    term = lemma_chain(
        (lift([clause(z)]), translate(g, d, goal=clause(z)))
        for g, d, z in zip(parts, derivations, zs)
    )
    return Scenario(n, parts, combined, witnesses, breakers, zs, derivations, naive, term)


def write(scenario: Scenario, directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    files = {
        "G.cnf": format_dimacs(scenario.combined, [f"composition scenario, n={scenario.n}"]),
        "rho.term": format_term(scenario.term) + "\n",
        "naive-concat.dsr": format_dsr(scenario.naive),
    }
    for i, (g, d) in enumerate(zip(scenario.parts, scenario.derivations), 1):
        files[f"G{i}.cnf"] = format_dimacs(g, [f"part {i}: derives z_{i} = {scenario.selectors[i - 1]}"])
        files[f"pi{i}.dsr"] = format_dsr(d)
        files[f"z{i}.goal"] = f"(or {scenario.selectors[i - 1]})\n"
    written = []
    for name, text in files.items():
        path = directory / name
        path.write_text(text)
        written.append(path)
    return written
