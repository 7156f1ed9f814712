"""Exact arithmetic: rationals, sparse polynomials, rational functions."""
from fractions import Fraction as Rational

from .gcd import ZeroGcdError, poly_gcd
from .poly import MissingAssignmentError, MultiPoly, divexact
from .ratfunc import RatFunc, RatFuncDivisionByZero
from .symbols import (
    D_SYMBOLS,
    DERIVATIVE_SYMBOLS,
    LAMBDA_SYMBOLS,
    SYMBOLS,
    T_SYMBOLS,
    Symbol,
)
from .text import (
    ExpressionSyntaxError,
    evaluate_expression,
    parse_ratfunc,
    poly_to_latex,
    poly_to_text,
    ratfunc_to_text,
)

__all__ = [
    "Rational",
    "Symbol",
    "SYMBOLS",
    "LAMBDA_SYMBOLS",
    "D_SYMBOLS",
    "T_SYMBOLS",
    "DERIVATIVE_SYMBOLS",
    "MultiPoly",
    "RatFunc",
    "poly_gcd",
    "divexact",
    "poly_arith",
    "ratfunc_arith",
    "poly_eval",
    "parse_ratfunc",
    "poly_to_text",
    "poly_to_latex",
    "ratfunc_to_text",
    "evaluate_expression",
    "ZeroGcdError",
    "RatFuncDivisionByZero",
    "MissingAssignmentError",
    "ExpressionSyntaxError",
]


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "div":
        return a / b
    if op in ("add", "sub", "mul"):
        return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__}[op](b)
    raise ValueError(f"unknown rational function operation {op!r}")


def poly_eval(p: MultiPoly, assignment) -> Rational:
    return p.evaluate(assignment)
