"""Literals, substitutions, assignments and clause/cube constraints.

Literals are DIMACS-style integers: ``v`` is the variable ``v`` and ``-v``
its negation.  The constants are ``TOP`` and ``BOT == -TOP``, so the
complement of every literal (constants included) is plain negation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

TOP = 1 << 40
BOT = -TOP

CLAUSE = "or"
CUBE = "and"


def is_const(lit: int) -> bool:
    return lit == TOP or lit == BOT


def complement(lit: int) -> int:
    return -lit


def check_var(var: int) -> int:
    if not isinstance(var, int) or isinstance(var, bool) or not 0 < var < TOP:
        raise ValueError(f"invalid variable id: {var!r}")
    return var


def check_lit(lit: int) -> int:
    if is_const(lit):
        return lit
    check_var(abs(lit))
    return lit


def lit_key(lit: int) -> tuple[int, int, bool]:
    # constants first, then by variable, positive before negative
    return (0 if is_const(lit) else 1, abs(lit), lit < 0)


def lit_str(lit: int) -> str:
    if lit == TOP:
        return "top"
    if lit == BOT:
        return "bot"
    return str(lit)


class Substitution:
    """A finite substitution, stored as its non-identity variable images.

    Images of negative literals are derived through the complement law and
    the constants are fixed points.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        clean = {}
        for var, image in items:
            check_var(var)
            check_lit(image)
            if image != var:
                clean[var] = image
            else:
                clean.pop(var, None)
        self._map = dict(sorted(clean.items()))
        self._hash = None

    def __call__(self, lit: int) -> int:
        if is_const(lit):
            return lit
        if lit > 0:
            return self._map.get(lit, lit)
        return -self._map.get(-lit, -lit)

    def compose(self, inner: Substitution) -> Substitution:
        """Return ``self ∘ inner``, i.e. ``l ↦ self(inner(l))``."""
        domain = set(self._map) | set(inner._map)
        return Substitution({v: self(inner(v)) for v in domain})

    def items(self):
        return self._map.items()

    def domain(self) -> tuple[int, ...]:
        return tuple(self._map)

    def variables(self) -> set[int]:
        out = set(self._map)
        out.update(abs(l) for l in self._map.values() if not is_const(l))
        return out

    def __len__(self) -> int:
        return len(self._map)

    def __bool__(self) -> bool:
        return bool(self._map)

    def __eq__(self, other) -> bool:
        return isinstance(other, Substitution) and self._map == other._map

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._map.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{v}->{lit_str(l)}" for v, l in self._map.items())
        return f"Substitution({{{body}}})"


IDENTITY = Substitution()


def apply_subst(sigma: Substitution, lit: int) -> int:
    return sigma(lit)


def compose_subst(tau: Substitution, sigma: Substitution) -> Substitution:
    return tau.compose(sigma)


class OutOfUniverse(ValueError):
    """A variable outside an assignment's declared universe was evaluated."""


class Assignment:
    """Total truth assignment over a declared finite set of variables."""

    __slots__ = ("_values", "_hash")

    def __init__(self, values: Mapping[int, bool | int]):
        self._values = {check_var(v): bool(b) for v, b in sorted(values.items())}
        self._hash = None

    @property
    def universe(self) -> tuple[int, ...]:
        return tuple(self._values)

    def __getitem__(self, var: int) -> bool:
        try:
            return self._values[var]
        except KeyError:
            raise OutOfUniverse(f"variable {var} is outside the universe") from None

    def satisfies(self, lit: int) -> bool:
        if lit == TOP:
            return True
        if lit == BOT:
            return False
        value = self[abs(lit)]
        return value if lit > 0 else not value

    def after(self, sigma: Substitution) -> Assignment:
        """The assignment ``I ∘ σ``: variable ``x`` is true iff ``I ⊨ σ(x)``."""
        return Assignment({v: self.satisfies(sigma(v)) for v in self._values})

    def as_dict(self) -> dict[int, bool]:
        return dict(self._values)

    def __eq__(self, other) -> bool:
        return isinstance(other, Assignment) and self._values == other._values

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._values.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{v}:{int(b)}" for v, b in self._values.items())
        return f"Assignment({{{body}}})"


def assign_after(assignment: Assignment, sigma: Substitution) -> Assignment:
    return assignment.after(sigma)


@dataclass(frozen=True)
class Constraint:
    """A clause (``kind == "or"``) or cube (``kind == "and"``) of literals.

    Literals are kept sorted and deduplicated.  Tautologies and constants
    are left in place: simplification is a semantic step.
    """

    kind: str
    lits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (CLAUSE, CUBE):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        lits = sorted({check_lit(l) for l in self.lits}, key=lit_key)
        object.__setattr__(self, "lits", tuple(lits))

    @property
    def is_clause(self) -> bool:
        return self.kind == CLAUSE

    @property
    def is_cube(self) -> bool:
        return self.kind == CUBE

    def negate(self) -> Constraint:
        return Constraint(CUBE if self.is_clause else CLAUSE, tuple(-l for l in self.lits))

    def reduce(self, sigma: Substitution) -> Constraint:
        return Constraint(self.kind, tuple(sigma(l) for l in self.lits))

    def variables(self) -> set[int]:
        return {abs(l) for l in self.lits if not is_const(l)}

    def __str__(self) -> str:
        return "(" + " ".join([self.kind, *map(lit_str, self.lits)]) + ")"


def clause(*lits: int) -> Constraint:
    return Constraint(CLAUSE, lits)


def cube(*lits: int) -> Constraint:
    return Constraint(CUBE, lits)


def canonicalize(c: Constraint) -> Constraint:
    # construction already canonicalizes; kept as an explicit entry point
    return Constraint(c.kind, c.lits)


def negate_constraint(c: Constraint) -> Constraint:
    return c.negate()


def reduce_constraint(c: Constraint, sigma: Substitution) -> Constraint:
    return c.reduce(sigma)


FALSUM = clause()


class Formula:
    """Finite, insertion-ordered set of constraints (static or dynamic).

    Equality is set equality; iteration follows first insertion.
    """

    __slots__ = ("_items", "_set")

    def __init__(self, items: Iterable = ()):
        seen = dict.fromkeys(items)
        self._items = tuple(seen)
        self._set = frozenset(self._items)

    def __iter__(self) -> Iterator:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item) -> bool:
        return item in self._set

    def __or__(self, other: Iterable) -> Formula:
        return Formula((*self._items, *other))

    def __sub__(self, other: Iterable) -> Formula:
        drop = other._set if isinstance(other, Formula) else set(other)
        return Formula(x for x in self._items if x not in drop)

    def __le__(self, other: Formula) -> bool:
        return self._set <= other._set

    def add(self, item) -> Formula:
        return self if item in self._set else Formula((*self._items, item))

    def remove(self, item) -> Formula:
        return self - (item,) if item in self._set else self

    def __eq__(self, other) -> bool:
        return isinstance(other, Formula) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return "Formula([" + ", ".join(map(str, self._items)) + "])"
