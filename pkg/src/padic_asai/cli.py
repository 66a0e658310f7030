"""Command-line entry point: ``padic-asai <command> ...``.

Exit codes: 0 on success, 1 when the input is rejected (diagnostics are
printed to stderr), 2 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from .asai_lfunction import gl4_local_at, local_euler_factor, local_identity_check
from .asai_transfer import TransferSign, q_equivalent, transfer_eigenpacket
from .errors import AsaiError, InvalidPacket
from .exact_algebra import MPoly, UniPoly, format_rational, format_scalar
from .fileformat import parse_packet, parse_report, render_report
from .hilbert_eigensystem import HilbertEigenPacket, HilbertWeight, Regime
from .properties import CHECKS, run_suite
from .weight_slope import (
    classical_weight_membership,
    classicality_check,
    slope_bound,
    small_slope_closed_form,
    star_eigenvalue,
    star_exponent,
)


class UserError(Exception):
    """Bad command-line input; reported with exit code 1."""


def format_poly(poly: UniPoly, var: str = "X") -> str:
    """Human-readable polynomial, lowest degree first."""
    parts = []
    for i, c in enumerate(poly.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        symbolic = isinstance(c, MPoly) and not c.is_constant()
        if symbolic:
            body = f"({format_scalar(c)})"
            sign = "+"
        else:
            q = c.constant_term() if isinstance(c, MPoly) else c
            sign = "-" if q < 0 else "+"
            body = format_rational(abs(q))
            if mono and abs(q) == 1:
                body = ""
        term = body + ("*" if body and mono else "") + mono
        if not parts:
            parts.append(term if sign == "+" else f"-{term}")
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts) if parts else "0"


def _sign(text: str) -> TransferSign:
    try:
        return TransferSign(text)
    except ValueError:
        raise argparse.ArgumentTypeError("sign must be plus or minus") from None


def _weight(text: str):
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"weight must be integers n1,n2[,v1,v2], got {text!r}") from None
    if len(parts) not in (2, 4):
        raise argparse.ArgumentTypeError("weight takes 2 (n1,n2) or 4 (n1,n2,v1,v2) integers")
    return parts


def _load(path) -> HilbertEigenPacket:
    if not Path(path).is_file():
        raise UserError(f"no such file: {path}")
    return parse_packet(path)


def _packet_k(pkt: HilbertEigenPacket, k: int | None) -> int:
    k = k if k is not None else pkt.k
    if k is None:
        raise UserError("the L-function check needs k: pass --k or set k in [packet]")
    return k


def cmd_transfer(args) -> int:
    pkt = _load(args.input)
    image = transfer_eigenpacket(pkt, args.sign)
    extra = {}
    star = star_eigenvalue(pkt, args.sign)
    extra["star"] = {
        "exponent": str(star_exponent(image.weight, pkt.regime)),
        "eigenvalue": format_scalar(star),
        "classical_weight": "yes" if classical_weight_membership(pkt.weight, pkt.regime) else "no",
    }
    brute = slope_bound(pkt.weight, pkt.regime)
    closed = small_slope_closed_form(pkt.weight, pkt.regime)
    if brute != closed:
        raise AssertionError(f"slope bounds disagree: bruteforce={brute}, closed={closed}")
    extra["slope"] = {"h": format_rational(brute)}
    try:
        report = classicality_check(pkt)
        extra["classicality"] = {
            "quantity": report.quantity,
            "valuation": format_rational(report.valuation),
            "threshold": format_rational(report.threshold),
            "classical": "yes" if report.classical else "no",
        }
    except AsaiError as exc:
        extra["classicality"] = {"classical": f"undetermined ({exc})"}
    text = render_report(image, pkt.ring, extra)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_euler(args) -> int:
    pkt = _load(args.input)
    k = _packet_k(pkt, args.k)
    ell = args.prime
    factor = local_euler_factor(gl4_local_at(pkt, ell, args.sign))
    check = local_identity_check(pkt, ell, k, args.order, args.sign)
    print(f"prime: {ell} ({pkt.field.splitting_type(ell).value})")
    print(f"sign: {args.sign.value}")
    print(f"k: {k}")
    print(f"factor: {format_poly(factor.poly)}")
    print(f"identity: {check.describe()}")
    if not check and args.sign is TransferSign.PLUS:
        # the plus-sign identity holds for every profile-respecting packet
        return 2
    return 0


def cmd_slope(args) -> int:
    regime = Regime(args.regime)
    w = args.weight
    if len(w) == 4:
        kappa = HilbertWeight(*w)
        problems = kappa.violations()
        if problems:
            raise UserError("; ".join(problems))
    else:
        kappa = w
    brute = slope_bound(kappa, regime)
    closed = small_slope_closed_form(kappa, regime)
    line = f"h = {format_rational(brute)} (bruteforce={format_rational(brute)}, closed={format_rational(closed)})"
    if brute != closed:
        print(line + " MISMATCH")
        return 2
    print(line)
    return 0


def cmd_classify(args) -> int:
    pkt = _load(args.input)
    report = classicality_check(pkt)
    print(f"regime: {report.regime.value}")
    print(f"{report.quantity} = {format_rational(report.valuation)}")
    print(f"threshold: {format_rational(report.threshold)}")
    print(f"classical: {'yes' if report.classical else 'no'}")
    member = classical_weight_membership(pkt.weight, pkt.regime)
    print(f"classical weight: {'yes' if member else 'no'}")
    return 0


def cmd_refine(args) -> int:
    pkt = _load(args.input)
    image = transfer_eigenpacket(pkt, args.sign)
    name = "u~" if pkt.regime is Regime.INERT else "u"
    print(f"regime: {pkt.regime.value}")
    print(f"sign: {args.sign.value}")
    for i, value in enumerate(image.refinement.values, start=1):
        print(f"{name}{i}: {format_scalar(value)}")
    return 0


def cmd_qfiber(args) -> int:
    reports = []
    for path in (args.first, args.second):
        if not Path(path).is_file():
            raise UserError(f"no such file: {path}")
        reports.append(parse_report(Path(path).read_text()))
    same = q_equivalent(*reports)
    print(f"q-equivalent: {'yes' if same else 'no'}")
    return 0


def cmd_verify(args) -> int:
    known = {c.name for c in CHECKS}
    unknown = sorted(set(args.check or ()) - known)
    if unknown:
        raise UserError(f"unknown check(s) {', '.join(unknown)}; known: {', '.join(sorted(known))}")
    results = run_suite(args.seed, args.trials, args.check or None)
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed (seed {args.seed}, trials {args.trials})")
    return 0 if passed == len(results) else 2


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors: exit 1, keeping 2 for internal failures
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="padic-asai", description="Asai transfer of Hilbert eigenpackets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transfer", help="transfer a packet and print the GL(4) report")
    p.add_argument("--input", required=True)
    p.add_argument("--sign", type=_sign, default=TransferSign.PLUS)
    p.add_argument("--output")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("euler", help="local Euler factor and L-function identity at one prime")
    p.add_argument("--input", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--sign", type=_sign, default=TransferSign.PLUS)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("slope", help="small-slope bound for a weight")
    p.add_argument("--weight", type=_weight, required=True)
    p.add_argument("--regime", choices=[r.value for r in Regime], required=True)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("classify", help="classicality verdict for the refinement")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("refine", help="refinement character values")
    p.add_argument("--input", required=True)
    p.add_argument("--sign", type=_sign, default=TransferSign.PLUS)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("qfiber", help="compare two transfer reports")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_qfiber)

    p = sub.add_parser("verify", help="run the seeded property suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--check", action="append", help="run only this check (repeatable)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidPacket as exc:
        for diag in exc.diagnostics:
            print(f"error: {diag}", file=sys.stderr)
        return 1
    except (AsaiError, UserError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 2


def run_command(argv) -> tuple[int, str, str]:
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:  # argparse usage errors
            code = exc.code if isinstance(exc.code, int) else 1
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
