"""Command-line front end.

Exit codes: 0 success or verified, 1 refuted, 2 degenerate or inconclusive,
3 parse or validation error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .budget import BudgetExceeded, budget
from .certificate import format_certificate, verify_certificate_text
from .exactfield import FunctionField
from .grammar import ParseError, parse_alg_element, parse_descriptor, parse_form, parse_in
from .katomilne import artin_schreier_image, d, dlog, symbol_to_algebra, triviality_by_witness
from .linkage import Degenerate, NotDivisionError, WitnessError, build_certificate
from .symbolalg import InconsistencyError, SymbolAlgebra, char_forms, inverse
from .valuation import (
    CONDITION_3_FAILS,
    DIVISION,
    Assertion,
    MorandiEvidence,
    ValueGroup,
    fundamental_inequality_check,
    morandi_check,
    symbol_value_data,
    value_group_intersection,
    x_adic,
)

OK, REFUTED, DEGENERATE, INVALID, OVER_BUDGET = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CommandResult:
    code: int
    report: str


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field(args) -> FunctionField:
    try:
        return FunctionField([v.strip() for v in args.vars.split(",") if v.strip()])
    except ValueError as exc:
        raise UsageError(f"--vars: {exc}") from exc


def _center(args, F):
    return parse_descriptor(args.over, F) if args.over else F


def _value(text: str, field, flag: str):
    try:
        return parse_in(text, field)
    except ParseError as exc:
        raise ParseError(f"{flag}: {exc}") from exc


def _algebra(args, F) -> SymbolAlgebra:
    center = _center(args, F)
    alpha = _value(args.alpha, center, "--alpha")
    beta = _value(args.beta, center, "--beta")
    if beta.is_zero():
        raise UsageError("--beta must be nonzero")
    return SymbolAlgebra(center, alpha, beta)


def _element(text: str, A: SymbolAlgebra, flag: str):
    try:
        if text.lstrip().startswith("elem"):
            return parse_alg_element(text, A)
        return A.scalar(parse_in(text, A.center))
    except ParseError as exc:
        raise ParseError(f"{flag}: {exc}") from exc


# -- subcommands ---------------------------------------------------------------


def cmd_eval(args) -> CommandResult:
    F = _field(args)
    K = _center(args, F)
    v = _value(args.expr, K, "expr")
    return CommandResult(OK, K.format(v) + "\n")


def cmd_charforms(args) -> CommandResult:
    A = _algebra(args, _field(args))
    a = _element(args.elem, A, "--elem")
    f = char_forms(a)
    fmt = A.center.format
    return CommandResult(OK, f"Tr = {fmt(f.tr)}\nsigma = {fmt(f.sigma)}\nN = {fmt(f.norm)}\n")


def cmd_invert(args) -> CommandResult:
    A = _algebra(args, _field(args))
    a = _element(args.elem, A, "--elem")
    inv = inverse(a)
    if inv is None:
        return CommandResult(REFUTED, "not invertible: N = 0\n")
    return CommandResult(OK, f"{inv}\n")


def cmd_link_construct(args) -> CommandResult:
    F = _field(args)
    A = _algebra(args, F)
    if A.center != F:
        raise UsageError("link-construct works over the base field; drop --over")
    r = _element(args.r, A, "--r")
    gamma = _value(args.gamma, F, "--gamma") if args.gamma else char_forms(r).norm
    try:
        result = build_certificate(A.alpha, A.beta, gamma, r, complement=not args.no_complement)
    except NotDivisionError as exc:
        return CommandResult(DEGENERATE, f"degenerate: {exc}\n")
    if isinstance(result, Degenerate):
        E = result.ext
        lines = [
            "degenerate",
            f"ext = {E.descriptor()}",
            f"lambda = {result.lam}",
            f"scalar = {E.format(result.scalar)}",
            f"confirmed gamma = N(scalar / lambda): {'yes' if result.confirmed else 'no'}",
            f"reason: {result.reason}",
        ]
        return CommandResult(DEGENERATE, "\n".join(lines) + "\n")
    text = format_certificate(result)
    if args.out:
        Path(args.out).write_text(text)
        E = result.slot.ext
        return CommandResult(OK, f"certificate written to {args.out}\next = {E.descriptor()}\nz = {result.slot.z}\n")
    return CommandResult(OK, text)


def cmd_link_verify(args) -> CommandResult:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from exc
    v = verify_certificate_text(text)
    return CommandResult(OK if v.verified else REFUTED, v.report())


def cmd_forms(args) -> CommandResult:
    F = _field(args)
    K = _center(args, F)
    action = args.action
    if action in ("d", "dlog"):
        if len(args.items) != 1:
            raise UsageError(f"forms {action} takes one expression")
        f = _value(args.items[0], K, "expr")
        if action == "dlog" and f.is_zero():
            raise UsageError("dlog of zero")
        return CommandResult(OK, f"{d(f) if action == 'd' else dlog(f)}\n")
    if action in ("expand", "as-image", "symbol"):
        if len(args.items) != 1:
            raise UsageError(f"forms {action} takes one form literal")
        s = parse_form(args.items[0], K)
        if action == "expand":
            return CommandResult(OK, f"{s.expand()}\n")
        if action == "as-image":
            return CommandResult(OK, f"{artin_schreier_image(s)}\n")
        return CommandResult(OK, symbol_to_algebra(s).descriptor() + "\n")
    # witness: alpha beta gamma r
    if len(args.items) != 4:
        raise UsageError("forms witness takes ALPHA BETA GAMMA R")
    alpha, beta, gamma = (_value(t, F, n) for t, n in zip(args.items, ("alpha", "beta", "gamma")))
    if beta.is_zero():
        raise UsageError("beta must be nonzero")
    A = SymbolAlgebra(F, alpha, beta)
    r = _element(args.items[3], A, "r")
    t = triviality_by_witness(alpha, beta, gamma, r)
    verdict = "trivial (witness verified)" if t.verified else "refuted for this witness"
    return CommandResult(OK if t.verified else REFUTED, f"{t.detail}\n{verdict}\n")


def cmd_valuation(args) -> CommandResult:
    action, items = args.action, args.items
    if action == "xadic":
        if len(items) != 1:
            raise UsageError("valuation xadic takes one expression")
        v = x_adic(_value(items[0], _field(args), "expr"), args.var)
        return CommandResult(OK, f"{'inf' if v == float('inf') else v}\n")
    if action == "symbol":
        if len(items) != 2:
            raise UsageError("valuation symbol takes ALPHA BETA")
        F = _field(args)
        alpha, beta = _value(items[0], F, "alpha"), _value(items[1], F, "beta")
        if beta.is_zero():
            raise UsageError("beta must be nonzero")
        data = symbol_value_data(SymbolAlgebra(F, alpha, beta), args.var)
        lines = [f"shape: {data.shape}", f"value group: {data.group}"]
        w = data.witness
        if w is not None:
            lines.append(f"[{'ok' if w.verified else 'FAIL'}] v({w.image}) = {w.image_value} = 3 * v({w.element}), v({w.element}) = {w.value}")
            if not w.verified:
                return CommandResult(REFUTED, "\n".join(lines) + "\n")
        return CommandResult(OK, "\n".join(lines) + "\n")
    if action == "intersect":
        if len(items) != 2:
            raise UsageError("valuation intersect takes two generators")
        g1, g2 = (ValueGroup.parse(t) for t in items)
        return CommandResult(OK, f"{value_group_intersection(g1, g2)}\n")
    if action == "morandi":
        if len(items) != 3:
            raise UsageError("valuation morandi takes GD GE GF")
        gd, ge, gf = (ValueGroup.parse(t) for t in items)
        ev = MorandiEvidence(
            Assertion(args.defectless is not None, args.defectless or ""),
            Assertion(args.residue_division is not None, args.residue_division or ""),
            gd, ge, gf,
        )
        c = morandi_check(ev)
        code = {DIVISION: OK, CONDITION_3_FAILS: REFUTED}.get(c.verdict, DEGENERATE)
        return CommandResult(code, c.report())
    # inequality
    if len(items) != 3:
        raise UsageError("valuation inequality takes RESDEG RAMINDEX DIM")
    try:
        nums = [int(t) for t in items]
    except ValueError as exc:
        raise UsageError("valuation inequality takes three positive integers") from exc
    verdict = fundamental_inequality_check(*nums)
    return CommandResult(REFUTED if verdict == "violation" else OK, f"{verdict}\n")


# -- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--vars", default="a,b", help="variables of the base field, in order (default a,b)")
    common.add_argument("--budget", type=float, default=None, metavar="SECONDS", help="wall-clock budget")

    p = _Parser(prog="char3link", description="Degree-3 symbol algebras over GF(3)(vars).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eval", parents=[common], help="canonical form of an expression")
    s.add_argument("expr")
    s.add_argument("--over", help="extension descriptor, e.g. 'quad(d=a)'")
    s.set_defaults(func=cmd_eval)

    for name, func, helptext in (
        ("charforms", cmd_charforms, "reduced trace, sigma and norm of an element"),
        ("invert", cmd_invert, "inverse of an element"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--alpha", required=True)
        s.add_argument("--beta", required=True)
        s.add_argument("--elem", required=True)
        s.add_argument("--over")
        s.set_defaults(func=func)

    s = sub.add_parser("link-construct", parents=[common], help="certificate from a norm witness r")
    s.add_argument("--alpha", required=True)
    s.add_argument("--beta", required=True)
    s.add_argument("--r", required=True)
    s.add_argument("--gamma", help="defaults to N(r)")
    s.add_argument("--out", help="write the certificate here instead of stdout")
    s.add_argument("--no-complement", action="store_true", help="skip the [complement] section")
    s.set_defaults(func=cmd_link_construct, over=None)

    s = sub.add_parser("link-verify", parents=[common], help="re-check a certificate file")
    s.add_argument("file")
    s.set_defaults(func=cmd_link_verify)

    s = sub.add_parser("forms", parents=[common], help="differential forms")
    s.add_argument("action", choices=["d", "dlog", "expand", "as-image", "symbol", "witness"])
    s.add_argument("items", nargs="+")
    s.add_argument("--over")
    s.set_defaults(func=cmd_forms)

    s = sub.add_parser("valuation", parents=[common], help="x-adic valuation and value groups")
    s.add_argument("action", choices=["xadic", "symbol", "intersect", "morandi", "inequality"])
    s.add_argument("items", nargs="+")
    s.add_argument("--var", default="x", help="the valuation variable (default x)")
    s.add_argument("--defectless", metavar="REASON", help="assert condition 1 with a reason")
    s.add_argument("--residue-division", metavar="REASON", help="assert condition 2 with a reason")
    s.set_defaults(func=cmd_valuation)
    return p


def run(argv) -> CommandResult:
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        return CommandResult(INVALID, f"error: {exc}\n")
    try:
        with budget(args.budget):
            return args.func(args)
    except BudgetExceeded:
        return CommandResult(OVER_BUDGET, f"error: time budget of {args.budget} s exceeded\n")
    except ParseError as exc:
        return CommandResult(INVALID, f"parse error: {exc}\n")
    except WitnessError as exc:
        return CommandResult(INVALID, f"invalid witness: {exc}\n")
    except InconsistencyError as exc:
        return CommandResult(REFUTED, f"internal inconsistency: {exc}\n")
    except (ValueError, ZeroDivisionError, NotImplementedError, ArithmeticError) as exc:
        return CommandResult(INVALID, f"error: {exc}\n")


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    result = run(argv)
    stream = sys.stdout if result.code in (OK, REFUTED, DEGENERATE) else sys.stderr
    stream.write(result.report)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
