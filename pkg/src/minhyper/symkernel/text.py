"""Canonical text form, LaTeX rendering and an expression reader.

Canonical text: terms in descending graded-lex order, ``*`` between factors,
``^`` for powers, and ``(num)/(den)`` for proper fractions, e.g.
``(2*l1*D1^2 - T123^2)/(l1^2 - 2*l1*l2 + l2^2)``.

The reader accepts the same syntax (``**`` also works) through Python's
``ast`` module and evaluates it over a caller-supplied namespace, so the
same routine can build a RatFunc or compute a plain Fraction.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Callable, Mapping

from .poly import MultiPoly
from .symbols import SYMBOLS


def _monomial(exps, names) -> list[str]:
    out = []
    for e, name in zip(exps, names):
        if e == 1:
            out.append(name)
        elif e:
            out.append(f"{name}^{e}")
    return out


def poly_to_text(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    names = [s.name for s in SYMBOLS]
    parts = []
    for exps, c in p.terms():
        factors = _monomial(exps, names)
        mag = abs(c)
        if factors:
            body = "*".join(([str(mag)] if mag != 1 else []) + factors)
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def ratfunc_to_text(r) -> str:
    if r.den == 1:
        return poly_to_text(r.num)
    return f"({poly_to_text(r.num)})/({poly_to_text(r.den)})"


def poly_to_latex(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    names = [s.latex for s in SYMBOLS]
    parts = []
    for exps, c in p.terms():
        factors = []
        for e, name in zip(exps, names):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{{{e}}}")
        mag = abs(c)
        coef = "" if (mag == 1 and factors) else (
            str(mag) if Fraction(mag).denominator == 1
            else rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        )
        body = coef + " ".join(factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


class ExpressionSyntaxError(ValueError):
    """The text is not an arithmetic expression the reader understands."""


def evaluate_expression(
    text: str,
    names: Mapping[str, object],
    functions: Mapping[str, Callable] | None = None,
    number: Callable[[int], object] = Fraction,
):
    """Evaluate arithmetic ``text`` with ``names`` and ``functions`` bound.

    Only +, -, *, /, ^ (or **) with integer exponents, parentheses, integer
    literals, bound names and calls with integer arguments are allowed.
    """
    functions = functions or {}
    source = " ".join(text.split()).replace("^", "**")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ExpressionSyntaxError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return number(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ExpressionSyntaxError(f"unknown name {node.id!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = _int_literal(node.right)
                return ev(node.left) ** exp
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn = functions.get(node.func.id)
            if fn is None or node.keywords:
                raise ExpressionSyntaxError(f"unknown function {node.func.id!r}")
            return fn(*(_int_literal(a) for a in node.args))
        raise ExpressionSyntaxError(f"unsupported syntax: {ast.dump(node)}")

    return ev(tree)


def _int_literal(node) -> int:
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return node.value
    raise ExpressionSyntaxError("expected an integer literal")


def parse_ratfunc(text: str):
    """Read canonical (or any arithmetic) text over the 11-symbol alphabet."""
    from .ratfunc import RatFunc

    names = {s.name: RatFunc.var(s) for s in SYMBOLS}
    return evaluate_expression(text, names, number=RatFunc.coerce)
