"""Command-line front end.

Exit codes: 0 accepted/entailed, 1 rejected/not entailed, 2 usage, parse
or resource errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import demo
from .core import FALSUM, Formula
from .dsr import SR_VARIANTS, STANDARD, translate, verify
from .dynamics import lift, static
from .formats import (
    ParseError,
    format_constraint,
    format_dsr_instruction,
    format_dynconstraint,
    format_term,
    parse_dimacs,
    parse_dsr,
    parse_goals,
    parse_term,
)
from .implication import DEFAULT_BUDGET, BudgetExceeded, format_trace
from .oracle import MAX_VARS, UniverseTooLarge, counterexample
from .proofs import Checker, MalformedProof

ACCEPT, REJECT, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load(path: str, parser):
    try:
        return parser(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _goals(path: str | None) -> Formula:
    if path is None:
        return Formula([static(FALSUM)])
    return _load(path, parse_goals)


def _leaf_lines(leaf) -> list[str]:
    if leaf is None:
        return []
    premises, conclusion = leaf
    body = " ".join(format_constraint(c) for c in premises)
    return [f"  failing leaf: {{{body}}} => {format_constraint(conclusion)}"]


def cmd_check_dsr(args, out) -> int:
    formula = _load(args.cnf, parse_dimacs)
    proof = _load(args.proof, parse_dsr)
    report = verify(formula, proof, args.sr_variant)
    if not report.valid:
        ins = proof[report.failed_at]
        kind = type(ins).__name__.lower()
        print(f"REJECTED: instruction {report.failed_at + 1} ({kind}) fails: "
              f"{format_dsr_instruction(ins)}", file=out)
        return REJECT
    if args.refutation and not report.refutation:
        print("REJECTED: valid derivation, but the accumulated formula has no "
              "propagation conflict", file=out)
        return REJECT
    what = "refutation" if report.refutation else "derivation"
    print(f"ACCEPTED: valid {what} ({len(proof)} instructions)", file=out)
    return ACCEPT


def cmd_translate(args, out) -> int:
    formula = _load(args.cnf, parse_dimacs)
    proof = _load(args.proof, parse_dsr)
    text = format_term(translate(formula, proof)) + "\n"
    if args.output == "-":
        out.write(text)
    else:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}", file=out)
    return ACCEPT


def cmd_check(args, out) -> int:
    formula = _load(args.cnf, parse_dimacs)
    term = _load(args.proof, parse_term)
    goals = _goals(args.goal)
    checker = Checker(args.budget, trace=args.trace)
    result = checker.check(term, lift(formula), goals)
    if args.trace:
        for path, goal, trace in checker.traces:
            where = ".".join(map(str, path))
            print(f"-- instruction {where}: goal {format_dynconstraint(goal)}", file=out)
            print(format_trace(trace, 1), file=out)
    if result.accepted:
        print("ACCEPTED", file=out)
        return ACCEPT
    where = ".".join(map(str, result.path))
    print(f"REJECTED: at instruction {where}, goal {format_dynconstraint(result.goal)} "
          "is not derived", file=out)
    for line in _leaf_lines(result.failing_leaf):
        print(line, file=out)
    return REJECT


def cmd_oracle(args, out) -> int:
    formula = _load(args.cnf, parse_dimacs)
    goals = _goals(args.goal)
    cex = counterexample(formula, goals, cap=args.max_vars)
    if cex is None:
        print("ENTAILED", file=out)
        return ACCEPT
    values = " ".join(str(v if b else -v) for v, b in cex.as_dict().items())
    print(f"NOT ENTAILED: counterexample {values}", file=out)
    return REJECT


def cmd_demo(args, out) -> int:
    scenario = demo.build(args.n)
    for path in demo.write(scenario, args.output):
        print(f"wrote {path}", file=out)
    return ACCEPT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynproof", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-dsr", help="check a DSR/WSR derivation against a CNF")
    p.add_argument("--cnf", required=True)
    p.add_argument("--proof", required=True)
    p.add_argument("--sr-variant", choices=SR_VARIANTS, default=STANDARD)
    p.add_argument("--refutation", action="store_true", help="also require a final conflict")
    p.set_defaults(func=cmd_check_dsr)

    p = sub.add_parser("translate", help="translate a DSR/WSR proof into a proof term")
    p.add_argument("--cnf", required=True)
    p.add_argument("--proof", required=True)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("check", help="check a proof term")
    p.add_argument("--cnf", required=True)
    p.add_argument("--proof", required=True)
    p.add_argument("--goal", help="goal file (default: the empty clause)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="decide entailment by enumeration")
    p.add_argument("--cnf", required=True)
    p.add_argument("--goal")
    p.add_argument("--max-vars", type=int, default=MAX_VARS)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("demo", help="generate example scenarios")
    demo_sub = p.add_subparsers(dest="scenario", required=True)
    q = demo_sub.add_parser("compose", help="symmetry-breaking proof composition")
    q.add_argument("-n", type=int, default=3)
    q.add_argument("-o", "--output", required=True)
    q.set_defaults(func=cmd_demo)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else ACCEPT
    try:
        return args.func(args, out)
    except (UsageError, ParseError, BudgetExceeded, MalformedProof, UniverseTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
