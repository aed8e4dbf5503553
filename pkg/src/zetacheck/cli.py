"""Command-line front end.

Exit status: 0 success or match, 1 mismatch, 2 usage or input error,
3 insufficient data.  With several expressions the reports come out in
input order (a JSON array for ``--format json``) and the exit status is
the largest one seen.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

import mpmath

from . import __version__
from .dsl import parse, to_text
from .errors import IncompleteProfile, ZetaCheckError
from .ledger import (
    SYMBOLIC,
    BaseData,
    equivariant_profile,
    infer_regulator,
    predicted_special_value,
    scheme_profile,
    weil_etale_profile,
)
from .numeric import Ball
from .scheme import archimedean_profile, delta, vanishing_order
from .zeta import SpecialValue, evaluate, factorize

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INSUFFICIENT = 0, 1, 2, 3

COMMANDS = ("parse", "info", "zeta", "predict", "check", "weil-etale", "infer-regulator")


class Insufficient(Exception):
    """No base data for some component."""


# -- JSON encoding ----------------------------------------------------------

def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode_value(v) -> dict:
    if isinstance(v, Fraction):
        return {"kind": "exact", "value": _frac(v)}
    if isinstance(v, Ball):
        return {"kind": "numeric", "mid": v.mid_str(), "rad": v.rad_str()}
    raise TypeError(repr(v))


def encode_special_value(sv: SpecialValue) -> dict:
    out = {"order": sv.order, "mode": sv.mode, "sign": sv.sign, "leading": encode_value(sv.leading)}
    out["absolute"] = encode_value(sv.absolute())
    return out


def encode_profile(p) -> dict:
    s = lambda x: None if x is None else str(x)  # noqa: E731
    return {
        "rank_minus1": p.rank_minus1,
        "tors_minus1": s(p.tors_minus1),
        "ord_H0": s(p.ord_H0),
        "ord_H1": s(p.ord_H1),
        "r1": p.r1,
        "multiplier": None if p.multiplier is None else _frac(p.multiplier),
    }


# -- argument handling -----------------------------------------------------

def parse_regulator(text: str) -> Ball:
    """``VALUE`` or ``VALUE:RADIUS``."""
    mid, _, rad = text.partition(":")
    with mpmath.workprec(256):
        try:
            m = mpmath.mpf(mid)
            r = mpmath.mpf(rad) if rad else abs(m) * mpmath.mpf(2) ** -100
        except (ValueError, TypeError):
            raise argparse.ArgumentTypeError(f"bad regulator {text!r}") from None
    if m <= 0 or r < 0:
        raise argparse.ArgumentTypeError("regulator must be positive")
    return Ball(m, r)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zetacheck", description="Special values of zeta functions at negative integers.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("expr", nargs="+", help="scheme expression(s) in the DSL")
        sp.add_argument("--n", type=int, required=name != "parse", help="negative weight")
        sp.add_argument("--mode", choices=("auto", "exact", "numeric"), default="auto")
        sp.add_argument("--precision", type=int, default=128, help="bits (>= 64)")
        sp.add_argument("--data", action="append", default=[], help="extra base-data JSON file")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--regulator", type=parse_regulator, default=None, help="R as VALUE[:RADIUS]")
    return ap


# -- commands ---------------------------------------------------------------

def _analytic(expr, args) -> SpecialValue:
    return evaluate(expr, args.n, args.mode, args.precision)


def _profile(expr, args, data):
    prof = scheme_profile(expr, args.n, data)
    if prof is None:
        raise Insufficient("no base data for some component; pass --data")
    return prof


def _prediction(prof, args) -> dict:
    reg = args.regulator if args.regulator is not None else SYMBOLIC
    pred = predicted_special_value(prof, args.n, reg)
    out = {"order": pred.order, "cofactor": _frac(pred.cofactor), "mode": pred.mode}
    out["value"] = None if pred.value is None else encode_value(pred.value)
    return out, pred


def _compare(sv: SpecialValue, pred) -> dict:
    if sv.order != pred.order:
        return {"status": "MISMATCH", "detail": f"orders {sv.order} and {pred.order} differ"}
    if pred.value is None:
        return {"status": "SYMBOLIC", "cofactor": _frac(pred.cofactor)}
    a, b = sv.absolute(), pred.value
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return {"status": "EXACT_MATCH" if a == b else "MISMATCH"}
    a = a if isinstance(a, Ball) else Ball.exact(a)
    b = b if isinstance(b, Ball) else Ball.exact(b)
    bound = mpmath.nstr(a.rad + b.rad, 5)
    return {"status": "NUMERIC_MATCH" if a.overlaps(b) else "MISMATCH", "bound": bound}


def run_one(command: str, text: str, args, data: BaseData) -> tuple[int, dict]:
    report = {"command": command, "input": text, "n": args.n, "diagnostics": []}
    expr = parse(text)
    report["input"] = to_text(expr)
    if command == "parse":
        report["result"] = {"canonical": to_text(expr)}
        return EXIT_OK, report
    prof = archimedean_profile(expr)
    if command == "info":
        report["result"] = {
            "r1": prof.r1,
            "r2": prof.r2,
            "d_n": vanishing_order(expr, args.n),
            "delta": delta(expr, args.n),
            "generic_chars": list(prof.generic_chars),
        }
        eq = equivariant_profile(expr, args.n)
        report["result"]["equivariant"] = {"h0c_rank": eq.h0c_rank, "tate_order": str(eq.tate_order), "parity": eq.parity}
        return EXIT_OK, report
    if command == "zeta":
        report["analytic"] = encode_special_value(_analytic(expr, args))
        report["result"] = {"factors": [repr(f) for f in factorize(expr)]}
        return EXIT_OK, report
    if command == "predict":
        profile = _profile(expr, args, data)
        report["profile"] = encode_profile(profile)
        report["prediction"], pred = _prediction(profile, args)
        if pred.value is None:
            report["verdict"] = {"status": "SYMBOLIC", "cofactor": _frac(pred.cofactor)}
        return EXIT_OK, report
    if command == "check":
        sv = _analytic(expr, args)
        report["analytic"] = encode_special_value(sv)
        try:
            profile = _profile(expr, args, data)
        except Insufficient as exc:
            report["verdict"] = {"status": "INSUFFICIENT_DATA"}
            report["diagnostics"].append(str(exc))
            return EXIT_INSUFFICIENT, report
        report["profile"] = encode_profile(profile)
        report["prediction"], pred = _prediction(profile, args)
        verdict = _compare(sv, pred)
        if verdict["status"] == "SYMBOLIC" and profile.multiplier is not None:
            r = infer_regulator(sv, profile, args.n)
            report["diagnostics"].append(f"regulator consistent with both sides: {r}")
        report["verdict"] = verdict
        return (EXIT_MISMATCH if verdict["status"] == "MISMATCH" else EXIT_OK), report
    if command == "weil-etale":
        profile = _profile(expr, args, data)
        try:
            we = weil_etale_profile(profile, args.n)
        except IncompleteProfile as exc:
            raise Insufficient(str(exc)) from exc
        report["profile"] = encode_profile(profile)
        report["result"] = {
            "groups": {str(i): {"rank": g.rank, "torsion": str(g.torsion)} for i, g in sorted(we.groups.items())},
            "h1_extension_order": str(we.h1_extension_order),
            "euler_rank_sum": we.euler_rank_sum(),
        }
        return EXIT_OK, report
    if command == "infer-regulator":
        profile = _profile(expr, args, data)
        sv = evaluate(expr, args.n, "numeric", args.precision)
        report["analytic"] = encode_special_value(sv)
        report["profile"] = encode_profile(profile)
        report["result"] = {"regulator": encode_value(infer_regulator(sv, profile, args.n))}
        report["diagnostics"].append("an inferred regulator is only claimed to be internally consistent")
        return EXIT_OK, report
    raise AssertionError(command)


def _error_report(command: str, text: str, args, exc: Exception, status: Optional[str] = None) -> dict:
    name = getattr(exc, "code", type(exc).__name__)
    rep = {"command": command, "input": text, "n": args.n, "error": {"name": name, "message": str(exc)}, "diagnostics": []}
    if status:
        rep["verdict"] = {"status": status}
    return rep


def format_text(rep: dict) -> str:
    lines = [f"{rep['command']} {rep['input']}" + (f"  (n = {rep['n']})" if rep.get("n") is not None else "")]

    def value(v):
        if v is None:
            return "symbolic"
        return v["value"] if v["kind"] == "exact" else f"{v['mid']} +/- {v['rad']}"

    if "error" in rep:
        lines.append(f"  error: {rep['error']['message']}")
    if "result" in rep:
        for k, v in rep["result"].items():
            if k == "regulator":
                v = value(v)
            elif k == "groups":
                v = ", ".join(f"H^{i}_W: rank {g['rank']}, torsion {g['torsion']}" for i, g in v.items())
            elif k == "factors":
                v = " * ".join(v)
            lines.append(f"  {k}: {v}")
    if "analytic" in rep:
        a = rep["analytic"]
        lines.append(f"  zeta*: order {a['order']}, leading {value(a['leading'])} ({a['mode']})")
    if "profile" in rep:
        p = rep["profile"]
        lines.append(
            f"  ledger: |H^-1_tors| = {p['tors_minus1']}, |H^0| = {p['ord_H0']}, |H^1| = {p['ord_H1']}, M = {p['multiplier']}"
        )
    if "prediction" in rep:
        pr = rep["prediction"]
        lines.append(f"  predicted |zeta*|: {value(pr['value'])}  (cofactor {pr['cofactor']})")
    if "verdict" in rep:
        v = rep["verdict"]
        extra = "".join(f" {k}={val}" for k, val in v.items() if k != "status")
        lines.append(f"  verdict: {v['status']}{extra}")
    for d in rep.get("diagnostics", []):
        lines.append(f"  note: {d}")
    return "\n".join(lines)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command != "parse" and args.n >= 0:
        print(f"NonNegativeWeight: --n must be negative, got {args.n}", file=sys.stderr)
        return EXIT_USAGE
    if args.precision < 64:
        print("error: --precision must be at least 64", file=sys.stderr)
        return EXIT_USAGE
    try:
        data = BaseData.default(args.data)
    except (ZetaCheckError, OSError) as exc:
        print(f"{getattr(exc, 'code', type(exc).__name__)}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    codes, reports = [], []
    for text in args.expr:
        try:
            code, rep = run_one(args.command, text, args, data)
        except Insufficient as exc:
            code, rep = EXIT_INSUFFICIENT, _error_report(args.command, text, args, exc, "INSUFFICIENT_DATA")
        except ZetaCheckError as exc:
            code, rep = EXIT_USAGE, _error_report(args.command, text, args, exc)
        codes.append(code)
        reports.append(rep)

    if args.format == "json":
        payload = reports[0] if len(reports) == 1 else reports
        print(json.dumps(payload, indent=2), file=stdout)
    else:
        print("\n".join(format_text(r) for r in reports), file=stdout)
    return max(codes)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
