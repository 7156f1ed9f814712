"""Rational functions in canonical reduced form."""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, lcm as ilcm
from typing import Mapping

from .gcd import poly_gcd
from .poly import MultiPoly, divexact
from .symbols import Symbol


class RatFuncDivisionByZero(ZeroDivisionError):
    """Division by the zero rational function."""


def _quo(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if b.is_constant():
        return a.scale(Fraction(1) / b.constant_value()) if b != 1 else a
    q = divexact(a, b)
    if q is None:
        raise ArithmeticError("internal error: inexact division by a gcd")
    return q


class RatFunc:
    """num/den with gcd(num, den) = 1.

    Canonical form: both parts have integer coefficients whose combined
    content is 1, and den has a positive graded-lex leading coefficient.
    Equality of values is therefore equality of stored components.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num, den = MultiPoly.coerce(num), MultiPoly.coerce(den)
        if den.is_zero():
            raise RatFuncDivisionByZero("zero denominator")
        if not den.is_constant() and not num.is_zero():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = _quo(num, g), _quo(den, g)
        self.num, self.den = _normalize_content(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: MultiPoly, den: MultiPoly) -> RatFunc:
        obj = cls.__new__(cls)
        obj.num, obj.den = _normalize_content(num, den)
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        return cls._raw(MultiPoly.coerce(x), MultiPoly.one())

    @classmethod
    def var(cls, sym: Symbol | str) -> RatFunc:
        return cls._raw(MultiPoly.var(sym), MultiPoly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def symbols(self) -> frozenset[Symbol]:
        return self.num.symbols() | self.den.symbols()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self) -> RatFunc:
        return RatFunc._raw(-self.num, self.den)

    def __pos__(self) -> RatFunc:
        return self

    def __add__(self, other) -> RatFunc:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero():
            return other
        if c.is_zero():
            return self
        if b == d:
            t = a + c
            if t.is_zero():
                return RatFunc._raw(t, MultiPoly.one())
            g = poly_gcd(t, b) if not b.is_constant() else MultiPoly.one()
            return RatFunc._raw(_quo(t, g), _quo(b, g))
        if b.is_constant() and d.is_constant():
            return RatFunc._raw(a * d + c * b, b * d)
        g = poly_gcd(b, d)
        bg, dg = _quo(b, g), _quo(d, g)
        t = a * dg + c * bg
        if t.is_zero():
            return RatFunc._raw(t, MultiPoly.one())
        g2 = poly_gcd(t, g) if not g.is_constant() else MultiPoly.one()
        return RatFunc._raw(_quo(t, g2), bg * _quo(d, g2))

    __radd__ = __add__

    def __sub__(self, other) -> RatFunc:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RatFunc:
        return (-self) + other

    def __mul__(self, other) -> RatFunc:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RatFunc._raw(MultiPoly.zero(), MultiPoly.one())
        g1 = poly_gcd(a, d) if not d.is_constant() else None
        g2 = poly_gcd(c, b) if not b.is_constant() else None
        if g1 is not None and not g1.is_constant():
            a, d = _quo(a, g1), _quo(d, g1)
        if g2 is not None and not g2.is_constant():
            c, b = _quo(c, g2), _quo(b, g2)
        return RatFunc._raw(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise RatFuncDivisionByZero("inverse of the zero rational function")
        return RatFunc._raw(self.den, self.num)

    def __truediv__(self, other) -> RatFunc:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> RatFunc:
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> RatFunc:
        if not isinstance(n, int):
            raise TypeError("exponent must be an int")
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def diff(self, sym: Symbol) -> RatFunc:
        dn, dd = self.num.diff(sym), self.den.diff(sym)
        if dd.is_zero():
            return RatFunc._raw(dn, self.den)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, assignment: Mapping) -> Fraction:
        den = self.den.evaluate(assignment)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the assignment")
        return self.num.evaluate(assignment) / den

    def __str__(self) -> str:
        from .text import ratfunc_to_text

        return ratfunc_to_text(self)

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _normalize_content(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    if num.is_zero():
        return num, MultiPoly.one()
    coeffs = num.coefficients() + den.coefficients()
    scale = ilcm(*(c.denominator for c in coeffs))
    g = igcd(*(int(c * scale) for c in coeffs))
    factor = Fraction(scale, g)
    if den.leading_coeff() < 0:
        factor = -factor
    if factor == 1:
        return num, den
    return num.scale(factor), den.scale(factor)
