"""Readers and writers for DIMACS CNF, DSR/WSR proof lines and the native
s-expression forms of constraints, programs and proof terms.

Native grammar::

    cstr    := (or lit*) | (and lit*)           lit := int | top | bot
    program := (seq item*)
    item    := (assign (var lit)*) | (test cstr)
             | (choice program program) | (branch cstr program program)
    dyn     := cstr | (dyn program cstr)
    term    := (qed) | (elim term) | (lem (dyn*) term term)
             | (ctx program term term)

A goal file is a whitespace-separated sequence of ``dyn``.  ``;`` starts a
comment that runs to the end of the line.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import BOT, CLAUSE, CUBE, TOP, Constraint, Formula, Substitution, clause, lit_str
from .dsr import Del, Rup, Sr, Wsr
from .dynamics import Assign, Branch, Choice, DynConstraint, Test
from .proofs import Ctx, Elim, Lem, Qed


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# ---------------------------------------------------------------- DIMACS

def parse_dimacs(text: str) -> Formula:
    clauses = []
    current: list[int] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad header {line!r}", lineno)
            seen_header = True
            continue
        if not seen_header:
            raise ParseError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"not an integer literal: {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(clause(*current))
                current = []
            else:
                current.append(lit)
    if current:
        raise ParseError("last clause is not terminated by 0")
    return Formula(clauses)


def format_dimacs(formula: Iterable[Constraint], comments: Sequence[str] = ()) -> str:
    formula = list(formula)
    nvars = 0
    for c in formula:
        if not c.is_clause or TOP in c.lits or BOT in c.lits:
            raise ValueError(f"cannot write {c} as a DIMACS clause")
        nvars = max([nvars, *map(abs, c.lits)])
    lines = [f"c {line}" for line in comments]
    lines.append(f"p cnf {nvars} {len(formula)}")
    lines.extend(" ".join(map(str, (*c.lits, 0))) for c in formula)
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------- DSR lines

def _image(tok: str, lineno: int) -> int:
    if tok == "t":
        return TOP
    if tok == "f":
        return BOT
    try:
        lit = int(tok)
    except ValueError:
        raise ParseError(f"bad witness image {tok!r}", lineno) from None
    if lit == 0:
        raise ParseError("witness image 0", lineno)
    return lit


def _parse_dsr_line(tokens: list[str], lineno: int):
    pos = 0

    def take_lits() -> list[int]:
        nonlocal pos
        lits = []
        while True:
            if pos >= len(tokens):
                raise ParseError("unterminated literal list", lineno)
            tok = tokens[pos]
            pos += 1
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"not an integer literal: {tok!r}", lineno) from None
            if lit == 0:
                return lits
            lits.append(lit)

    deletion = tokens[0] == "d"
    if deletion:
        pos = 1
    lits = take_lits()
    if deletion:
        if pos != len(tokens):
            raise ParseError("trailing tokens after deletion", lineno)
        return Del(clause(*lits))
    if pos == len(tokens):
        return Rup(clause(*lits))
    if tokens[pos] != "w":
        raise ParseError(f"expected 'w', got {tokens[pos]!r}", lineno)
    pos += 1
    pairs = []
    while True:
        if pos >= len(tokens):
            raise ParseError("unterminated witness", lineno)
        tok = tokens[pos]
        pos += 1
        if tok == "0":
            break
        try:
            var = int(tok)
        except ValueError:
            raise ParseError(f"bad witness variable {tok!r}", lineno) from None
        if var <= 0:
            raise ParseError(f"witness variable must be positive, got {var}", lineno)
        if pos >= len(tokens):
            raise ParseError("witness variable without image", lineno)
        pairs.append((var, _image(tokens[pos], lineno)))
        pos += 1
    witness = Substitution(pairs)
    if pos == len(tokens):
        return Sr(clause(*lits), witness)
    if tokens[pos] != "g":
        raise ParseError(f"expected 'g', got {tokens[pos]!r}", lineno)
    pos += 1
    removed = []
    while True:
        if pos >= len(tokens):
            raise ParseError("unterminated removed-clause list", lineno)
        if tokens[pos] == "0":
            pos += 1
            break
        removed.append(clause(*take_lits()))
    if pos != len(tokens):
        raise ParseError("trailing tokens after WSR step", lineno)
    return Wsr(clause(*lits), witness, Formula(removed))


def parse_dsr(text: str) -> list:
    proof = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        proof.append(_parse_dsr_line(tokens, lineno))
    return proof


def _lits_text(c: Constraint) -> str:
    return " ".join([*map(str, c.lits), "0"])


def _image_text(lit: int) -> str:
    return {TOP: "t", BOT: "f"}.get(lit, str(lit))


def format_dsr_instruction(ins) -> str:
    if isinstance(ins, Del):
        return "d " + _lits_text(ins.clause)
    if isinstance(ins, Rup):
        return _lits_text(ins.clause)
    pairs = " ".join(f"{v} {_image_text(l)}" for v, l in ins.witness.items())
    head = f"{_lits_text(ins.clause)} w {pairs + ' ' if pairs else ''}0"
    if isinstance(ins, Sr):
        return head
    removed = " ".join(_lits_text(c) for c in ins.removed)
    return f"{head} g {removed + ' ' if removed else ''}0"


def format_dsr(proof: Iterable) -> str:
    return "".join(format_dsr_instruction(ins) + "\n" for ins in proof)


# ------------------------------------------------------- s-expressions

def read_sexprs(text: str) -> list:
    """Tokenize and nest; atoms are (string, line) pairs, lists carry their line."""
    stack: list[list] = [[]]
    lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0]
        for tok in line.replace("(", " ( ").replace(")", " ) ").split():
            if tok == "(":
                stack.append(SList(lineno))
                lines.append(lineno)
            elif tok == ")":
                if len(stack) == 1:
                    raise ParseError("unbalanced ')'", lineno)
                done = stack.pop()
                lines.pop()
                stack[-1].append(done)
            else:
                stack[-1].append(Atom(tok, lineno))
    if len(stack) != 1:
        raise ParseError("unclosed '('", lines[-1])
    return stack[0]


class SList(list):
    def __init__(self, line: int):
        super().__init__()
        self.line = line


class Atom(str):
    def __new__(cls, text: str, line: int):
        obj = super().__new__(cls, text)
        obj.line = line
        return obj


def _line(node) -> int | None:
    return getattr(node, "line", None)


def _expect_list(node, head: str | None = None, what: str = "expression") -> SList:
    if not isinstance(node, list):
        raise ParseError(f"expected {what}, got atom {node!r}", _line(node))
    if head is not None and (not node or node[0] != head):
        raise ParseError(f"expected ({head} ...)", _line(node))
    return node


def _lit(node) -> int:
    if isinstance(node, list):
        raise ParseError("expected a literal", _line(node))
    if node == "top":
        return TOP
    if node == "bot":
        return BOT
    try:
        lit = int(node)
    except ValueError:
        raise ParseError(f"bad literal {node!r}", _line(node)) from None
    if lit == 0:
        raise ParseError("literal 0", _line(node))
    return lit


def constraint_from(node) -> Constraint:
    node = _expect_list(node, what="constraint")
    if not node or node[0] not in (CLAUSE, CUBE):
        raise ParseError("expected (or ...) or (and ...)", _line(node))
    return Constraint(str(node[0]), tuple(_lit(x) for x in node[1:]))


def program_from(node) -> tuple:
    node = _expect_list(node, "seq", "program")
    return tuple(_item_from(x) for x in node[1:])


def _item_from(node):
    node = _expect_list(node, what="program item")
    if not node:
        raise ParseError("empty program item", _line(node))
    head, args = node[0], node[1:]
    if head == "assign":
        pairs = []
        for pair in args:
            pair = _expect_list(pair, what="(var lit) pair")
            if len(pair) != 2:
                raise ParseError("assignment pairs have two entries", _line(pair))
            var = _lit(pair[0])
            if var <= 0 or var == TOP:
                raise ParseError(f"assignment target must be a variable, got {pair[0]}", _line(pair))
            pairs.append((var, _lit(pair[1])))
        return Assign(Substitution(pairs))
    if head == "test" and len(args) == 1:
        return Test(constraint_from(args[0]))
    if head == "choice" and len(args) == 2:
        return Choice(program_from(args[0]), program_from(args[1]))
    if head == "branch" and len(args) == 3:
        return Branch(constraint_from(args[0]), program_from(args[1]), program_from(args[2]))
    raise ParseError(f"malformed program item ({head} ...)", _line(node))


def dynconstraint_from(node) -> DynConstraint:
    node = _expect_list(node, what="dynamic constraint")
    if node and node[0] == "dyn":
        if len(node) != 3:
            raise ParseError("(dyn program constraint) takes two arguments", _line(node))
        return DynConstraint(program_from(node[1]), constraint_from(node[2]))
    return DynConstraint((), constraint_from(node))


def term_from(node) -> tuple:
    """Flatten the right-nested textual chain into an instruction tuple."""
    out = []
    while True:
        node = _expect_list(node, what="proof term")
        if not node:
            raise ParseError("empty proof instruction", _line(node))
        head, args = node[0], node[1:]
        if head == "qed" and not args:
            out.append(Qed())
            return tuple(out)
        if head == "elim" and len(args) == 1:
            out.append(Elim())
            node = args[0]
        elif head == "lem" and len(args) == 3:
            lemmas = _expect_list(args[0], what="lemma list")
            out.append(Lem(Formula(dynconstraint_from(x) for x in lemmas), term_from(args[1])))
            node = args[2]
        elif head == "ctx" and len(args) == 3:
            out.append(Ctx(program_from(args[0]), term_from(args[1])))
            node = args[2]
        else:
            raise ParseError(f"malformed proof instruction ({head} ...)", _line(node))


def _single(text: str, what: str):
    nodes = read_sexprs(text)
    if len(nodes) != 1:
        raise ParseError(f"expected exactly one {what}, found {len(nodes)}")
    return nodes[0]


def parse_constraint(text: str) -> Constraint:
    return constraint_from(_single(text, "constraint"))


def parse_program(text: str) -> tuple:
    return program_from(_single(text, "program"))


def parse_dynconstraint(text: str) -> DynConstraint:
    return dynconstraint_from(_single(text, "dynamic constraint"))


def parse_goals(text: str) -> Formula:
    return Formula(dynconstraint_from(n) for n in read_sexprs(text))


def parse_term(text: str) -> tuple:
    return term_from(_single(text, "proof term"))


def format_constraint(c: Constraint) -> str:
    return str(c)


def format_item(item) -> str:
    if isinstance(item, Assign):
        pairs = "".join(f" ({v} {lit_str(l)})" for v, l in item.subst.items())
        return f"(assign{pairs})"
    if isinstance(item, Test):
        return f"(test {item.cond})"
    if isinstance(item, Choice):
        return f"(choice {format_program(item.left)} {format_program(item.right)})"
    return f"(branch {item.cond} {format_program(item.then_)} {format_program(item.orelse)})"


def format_program(program: Iterable) -> str:
    return "(" + " ".join(["seq", *map(format_item, program)]) + ")"


def format_dynconstraint(c: DynConstraint) -> str:
    if not c.context:
        return str(c.prop)
    return f"(dyn {format_program(c.context)} {c.prop})"


def format_goals(goals: Iterable[DynConstraint]) -> str:
    return "".join(format_dynconstraint(c) + "\n" for c in goals)


def format_term(term: Sequence, indent: int = 0) -> str:
    """One instruction per line; the chain's closing parens trail the ``(qed)``."""
    pad = "  " * indent
    lines = []
    opened = 0
    for ins in term:
        if isinstance(ins, Qed):
            lines.append(pad + "(qed)" + ")" * opened)
            break
        if isinstance(ins, Elim):
            lines.append(pad + "(elim")
        elif isinstance(ins, Lem):
            lemmas = " ".join(format_dynconstraint(c) for c in ins.lemmas)
            lines.append(f"{pad}(lem ({lemmas})")
            lines.append(format_term(ins.sub, indent + 1))
        else:
            lines.append(f"{pad}(ctx {format_program(ins.program)}")
            lines.append(format_term(ins.sub, indent + 1))
        opened += 1
    return "\n".join(lines)
