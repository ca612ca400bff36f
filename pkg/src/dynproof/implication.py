"""Dynamic implication detection.

An implication ``Γ ⇒ Φ`` is rewritten with the necessity rules until the
right-hand side is static, then with the possibility rules until every
left-hand constraint is static.  Each resulting leaf ``F ⇒ C`` is accepted
when unit propagation on ``F ∪ {¬C}`` finds a conflict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import Formula
from .dynamics import (
    Assign,
    Branch,
    Choice,
    DynConstraint,
    Test,
    reduce_dynconstraint,
    static,
)
from .propagation import conflict

DEFAULT_BUDGET = 1_000_000


class BudgetExceeded(RuntimeError):
    """More leaves were generated than the configured budget allows."""


@dataclass(frozen=True)
class Implication:
    lhs: Formula
    rhs: DynConstraint

    @property
    def is_static(self) -> bool:
        return not self.rhs.context and all(not c.context for c in self.lhs)


@dataclass
class TraceNode:
    implication: Implication
    rule: str | None = None
    target: DynConstraint | None = None
    children: list[TraceNode] = field(default_factory=list)
    verdict: bool | None = None


@dataclass
class ImplicationResult:
    accepted: bool
    leaves: int
    failing_leaf: tuple[Formula, object] | None = None
    trace: TraceNode | None = None

    def __bool__(self) -> bool:
        return self.accepted


def _with_rest(c: DynConstraint, program: tuple) -> DynConstraint:
    return DynConstraint(program + c.context[1:], c.prop)


def apply_necessity(impl: Implication) -> list[Implication]:
    rhs = impl.rhs
    if not rhs.context:
        raise ValueError("necessity rules need a non-empty right-hand context")
    head = rhs.context[0]
    rest = DynConstraint(rhs.context[1:], rhs.prop)
    lhs = impl.lhs
    if isinstance(head, Assign):
        return [Implication(lhs, reduce_dynconstraint(rest, head.subst))]
    if isinstance(head, Choice):
        return [Implication(lhs, _with_rest(rhs, head.left)),
                Implication(lhs, _with_rest(rhs, head.right))]
    if isinstance(head, Test):
        return [Implication(lhs.add(static(head.cond)), rest)]
    if isinstance(head, Branch):
        return [Implication(lhs.add(static(head.cond)), _with_rest(rhs, head.then_)),
                Implication(lhs.add(static(head.cond.negate())), _with_rest(rhs, head.orelse))]
    raise TypeError(f"not a program item: {head!r}")


def apply_possibility(impl: Implication, target: DynConstraint) -> list[Implication]:
    if target not in impl.lhs:
        raise ValueError("possibility target is not on the left-hand side")
    if not target.context:
        raise ValueError("possibility target has an empty context")
    head = target.context[0]
    rest = DynConstraint(target.context[1:], target.prop)
    others = impl.lhs.remove(target)
    phi = impl.rhs
    if isinstance(head, Assign):
        return [Implication(others.add(reduce_dynconstraint(rest, head.subst)), phi)]
    if isinstance(head, Choice):
        return [Implication(others | (_with_rest(target, head.left), _with_rest(target, head.right)), phi)]
    if isinstance(head, Test):
        return [Implication(others | (rest, static(head.cond)), phi),
                Implication(others.add(static(head.cond.negate())), phi)]
    if isinstance(head, Branch):
        return [Implication(others | (_with_rest(target, head.then_), static(head.cond)), phi),
                Implication(others | (_with_rest(target, head.orelse), static(head.cond.negate())), phi)]
    raise TypeError(f"not a program item: {head!r}")


def _expand(impl: Implication) -> tuple[str, DynConstraint | None, list[Implication]] | None:
    if impl.rhs.context:
        return "N:" + type(impl.rhs.context[0]).__name__.lower(), None, apply_necessity(impl)
    for c in impl.lhs:
        if c.context:
            return "P:" + type(c.context[0]).__name__.lower(), c, apply_possibility(impl, c)
    return None


def leaf_check(impl: Implication) -> bool:
    props = [c.prop for c in impl.lhs]
    props.append(impl.rhs.prop.negate())
    return conflict(props)


def dyn_implies(lhs: Iterable[DynConstraint], rhs: DynConstraint,
                budget: int = DEFAULT_BUDGET, trace: bool = False) -> ImplicationResult:
    """Decide ``lhs ⊢dyn rhs``; acceptance implies ``lhs ⊨ rhs``.

    Stops at the first failing leaf.  Raises BudgetExceeded when more than
    ``budget`` leaves would be checked.
    """
    root_impl = Implication(lhs if isinstance(lhs, Formula) else Formula(lhs), rhs)
    root = TraceNode(root_impl) if trace else None
    stack = [(root_impl, root)]
    leaves = 0
    while stack:
        impl, node = stack.pop()
        step = _expand(impl)
        if step is not None:
            rule, target, children = step
            pairs = []
            for child in children:
                child_node = TraceNode(child) if trace else None
                pairs.append((child, child_node))
            if trace:
                node.rule, node.target = rule, target
                node.children = [n for _, n in pairs]
            stack.extend(reversed(pairs))
            continue
        leaves += 1
        if leaves > budget:
            raise BudgetExceeded(f"dynamic implication needs more than {budget} leaf checks")
        ok = leaf_check(impl)
        if trace:
            node.verdict = ok
        if not ok:
            static_lhs = Formula(c.prop for c in impl.lhs)
            return ImplicationResult(False, leaves, (static_lhs, impl.rhs.prop), root)
    return ImplicationResult(True, leaves, None, root)


def format_trace(node: TraceNode, indent: int = 0) -> str:
    from .formats import format_dynconstraint

    pad = "  " * indent
    lines = []
    impl = node.implication
    lhs = ", ".join(format_dynconstraint(c) for c in impl.lhs)
    head = f"{pad}{{{lhs}}} => {format_dynconstraint(impl.rhs)}"
    if node.rule is not None:
        head += f"   [{node.rule}"
        if node.target is not None:
            head += f" on {format_dynconstraint(node.target)}"
        head += "]"
    elif node.verdict is not None:
        head += "   [leaf: " + ("conflict" if node.verdict else "NO CONFLICT") + "]"
    else:
        head += "   [not explored]"
    lines.append(head)
    for child in node.children:
        lines.append(format_trace(child, indent + 1))
    return "\n".join(lines)
