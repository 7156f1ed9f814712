"""Command-line front end: ``minhyper {verify,models,solve,crosscheck}``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .models import (
    InvalidModelError,
    PatternError,
    classify,
    invariants,
    minimal_isoparametric,
    parse_pattern,
    solve_curvatures,
)
from .verifier import SUITES, CheckResult, emit_latex, numeric_crosscheck, run_suite

SUITE_CHOICES = ("all",) + tuple(SUITES)


def build_report(suite: str, checks: list[CheckResult]) -> dict:
    checks = sorted(checks, key=lambda c: c.name)
    passed = sum(c.passed for c in checks)
    return {
        "suite": suite,
        "engine_version": __version__,
        "checks": [c.to_dict() for c in checks],
        "summary": {"total": len(checks), "passed": passed, "failed": len(checks) - passed},
    }


def dumps(payload) -> str:
    """Canonical JSON text; parsing and re-dumping reproduces it byte for byte."""
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _summary_text(report: dict) -> str:
    lines = []
    for c in report["checks"]:
        line = f"{c['status']:4}  {c['name']:<22} {c['elapsed_ms']:>6} ms"
        if c["residual"]:
            line += f"  {c['residual']}"
        lines.append(line)
    s = report["summary"]
    lines.append(f"{report['suite']}: {s['passed']}/{s['total']} passed, {s['failed']} failed")
    return "\n".join(lines)


def _emit(report: dict, out: str | None) -> int:
    if out:
        Path(out).write_text(dumps(report), encoding="utf-8")
    else:
        print(_summary_text(report))
    return 0 if report["summary"]["failed"] == 0 else 1


def _number(text: str):
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def cmd_verify(args) -> int:
    report = build_report(args.suite, run_suite(args.suite))
    if args.emit_latex:
        print(emit_latex())
    return _emit(report, args.out)


def cmd_models(args) -> int:
    pc = minimal_isoparametric(args.g, args.pattern)
    inv = invariants(pc)
    print(dumps({"curvatures": pc.to_dict(), "invariants": inv.to_dict(), "class": classify(inv).value}), end="")
    return 0


def cmd_solve(args) -> int:
    sols = solve_curvatures(args.pattern, args.f1, args.f2, args.f3)
    print(dumps([pc.to_dict() for pc in sols]), end="")
    return 0


def cmd_crosscheck(args) -> int:
    result = numeric_crosscheck(args.seed, args.trials)
    return _emit(build_report("crosscheck", [result]), args.out)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minhyper", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("--suite", choices=SUITE_CHOICES, default="all")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--emit-latex", action="store_true", help="print the computed X_ij in LaTeX")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("models", help="minimal isoparametric model and its invariants")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--pattern", required=True, help="multiplicities, e.g. 1,1,1,1")
    p.set_defaults(func=cmd_models)

    p = sub.add_parser("solve", help="curvatures from f1, f2, f3 for g <= 3")
    p.add_argument("--pattern", required=True, type=parse_pattern)
    p.add_argument("--f1", type=_number, required=True)
    p.add_argument("--f2", type=_number, required=True)
    p.add_argument("--f3", type=_number, required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("crosscheck", help="compare fixtures, engine and a numeric frame")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidModelError, PatternError, ValueError) as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
