"""Command line: asmoments {lfun, family-moment, euler-eval, verify, report}."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

import mpmath

from .errors import ASMomentsError


def _ints(s: str):
    return [int(x) for x in s.split(",") if x.strip()]


_QPOW = re.compile(r"^\s*q\^\(?\s*([-+]?\d+(?:/\d+)?)\s*\)?\s*$")


def parse_point(s: str, q: int):
    """A coordinate: a rational ('1/9', '0.5') or a power of q ('q^-1/2', 'q^(1/6)')."""
    m = _QPOW.match(s)
    if m:
        e = Fraction(m.group(1))
        return mpmath.mpf(q) ** (mpmath.mpf(e.numerator) / e.denominator)
    if "/" in s:
        f = Fraction(s)
        return mpmath.mpf(f.numerator) / f.denominator
    return mpmath.mpf(s)


def _cmd_lfun(args):
    from .families import FamilySpec
    from .lfun import lfun_summary, make_curve
    F = FamilySpec("polynomial", 1, args.p, args.q).field
    curve = make_curve(F, _ints(args.num), _ints(args.den) if args.den else None, family=args.family)
    print(json.dumps(lfun_summary(curve), indent=1, sort_keys=True))
    return 0


def _cmd_family_moment(args):
    from .families import FamilySpec, brute_moment
    spec = FamilySpec(args.kind, args.d, args.p, args.q)
    res = brute_moment(spec, args.k, args.absolute, args.jobs, args.budget, args.method)
    print(json.dumps(res.to_json(), indent=1, sort_keys=True))
    return 0


def _cmd_euler_eval(args):
    from .formulas import euler
    at = [parse_point(s, args.q) for s in args.at.split(",")] if args.at else []
    with mpmath.workdps(args.precision or euler.DEFAULT_DPS):
        v = euler.euler_eval(args.product, args.p, args.q, at, args.trunc, args.k, args.j, args.variant)
        print(json.dumps(v.to_json(), indent=1, sort_keys=True))
    return 0


def _select_cases(args):
    from .harness import profile_cases
    cases = profile_cases(args.profile)
    if args.case and not args.all:
        wanted = set(args.case)
        cases = [c for c in cases if c.id in wanted]
    return cases


def _cmd_verify(args):
    from .harness import failed, report_emit, run_cases
    cases = _select_cases(args)
    if args.list:
        for c in cases:
            print(c.id, json.dumps(c.params, sort_keys=True))
        return 0
    rep = run_cases(cases, args.jobs, args.budget, args.precision, args.profile)
    text = report_emit(rep, args.format, args.output, include_timing=not args.no_timing)
    if args.output is None:
        sys.stdout.write(text)
    for r in rep["rows"]:
        print(f"{r['verdict']:6} {r['case']} {json.dumps(r['params'], sort_keys=True)}", file=sys.stderr)
    print(f"summary {json.dumps(rep['summary'], sort_keys=True)}", file=sys.stderr)
    return 1 if failed(rep) else 0


def _cmd_report(args):
    from .harness import failed, report_emit
    with open(args.input, encoding="utf-8") as fh:
        rep = json.load(fh)
    text = report_emit(rep, args.format, args.output, include_timing=not args.no_timing)
    if args.output is None:
        sys.stdout.write(text)
    return 1 if failed(rep) else 0


def build_parser():
    ap = argparse.ArgumentParser(prog="asmoments", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, jobs=True):
        if jobs:
            p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--budget", type=lambda s: None if s == "none" else int(float(s)),
                       default=5 * 10 ** 9, help="work cap, or 'none'")
        p.add_argument("--precision", type=int, default=None, help="decimal digits for mpmath")

    p = sub.add_parser("lfun", help="L-polynomial, root number and RH check of one curve")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--num", required=True, help="numerator coefficients, constant term first")
    p.add_argument("--den", default=None, help="denominator coefficients, constant term first")
    p.add_argument("--family", choices=["polynomial", "odd", "ordinary"], default=None)
    p.set_defaults(fn=_cmd_lfun)

    p = sub.add_parser("family-moment", help="exact brute-force moment over a family")
    p.add_argument("--kind", choices=["polynomial", "odd", "ordinary"], required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--absolute", action="store_true", help="average |L|^(2k) instead of L^k")
    p.add_argument("--method", choices=["auto", "full", "fe"], default="auto")
    common(p)
    p.set_defaults(fn=_cmd_family_moment)

    p = sub.add_parser("euler-eval", help="truncated Euler product with tail bound")
    p.add_argument("--product", choices=["G", "E", "F1", "F2", "F3", "H", "thm11k"], required=True)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--at", default="", help="comma-separated point, e.g. 'q^-1/2,q^-1/2'")
    p.add_argument("--trunc", type=int, default=None, help="largest prime degree kept")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--variant", choices=["printed", "series"], default="printed")
    p.add_argument("--precision", type=int, default=None)
    p.set_defaults(fn=_cmd_euler_eval)

    p = sub.add_parser("verify", help="run verification cases")
    p.add_argument("--profile", choices=["smoke", "desk", "extended"], default="smoke")
    p.add_argument("--all", action="store_true", help="every case of the profile")
    p.add_argument("--case", action="append", default=[], help="case id (repeatable)")
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    p.add_argument("--output", default=None)
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--list", action="store_true", help="list the selected cases and exit")
    common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("report", help="re-render a JSON report")
    p.add_argument("input")
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="markdown")
    p.add_argument("--output", default=None)
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(fn=_cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ASMomentsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
