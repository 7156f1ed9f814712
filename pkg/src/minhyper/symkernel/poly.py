"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are packed into a single Python int: one 16-bit field per symbol
(l1 in the highest variable field) plus a total-degree field on top.  With
that layout integer order on keys *is* graded-lex order, monomial product
is integer addition, and divisibility is a borrow test on the guard bits.
Exponents are limited to 2**15 - 1 per symbol.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterator, Mapping, Sequence, Union

from .symbols import NVARS, SYMBOLS, Symbol

Coeff = Union[int, Fraction]

FIELD = 16
MASK = (1 << FIELD) - 1
MAX_EXP = (1 << (FIELD - 1)) - 1
DEG_SHIFT = FIELD * NVARS
GUARDS = sum(1 << (FIELD * f + FIELD - 1) for f in range(NVARS + 1))
_SHIFTS = tuple(FIELD * (NVARS - 1 - p) for p in range(NVARS))


class MissingAssignmentError(KeyError):
    """Evaluation hit a symbol that the assignment does not cover."""


def pack(exps: Sequence[int]) -> int:
    if len(exps) != NVARS:
        raise ValueError(f"exponent vector must have length {NVARS}")
    key = 0
    for e, shift in zip(exps, _SHIFTS):
        if e < 0 or e > MAX_EXP:
            raise OverflowError(f"exponent {e} outside 0..{MAX_EXP}")
        key |= e << shift
    deg = sum(exps)
    if deg > MAX_EXP:
        raise OverflowError("total degree too large")
    return key | (deg << DEG_SHIFT)


def unpack(key: int) -> tuple[int, ...]:
    return tuple((key >> shift) & MASK for shift in _SHIFTS)


def key_degree(key: int) -> int:
    return key >> DEG_SHIFT


def var_exponent(key: int, pos: int) -> int:
    return (key >> _SHIFTS[pos]) & MASK


def var_key(pos: int, e: int = 1) -> int:
    """Packed key of the monomial symbol**e."""
    return (e << _SHIFTS[pos]) | (e << DEG_SHIFT)


def divides(small: int, big: int) -> int | None:
    """Packed quotient big/small if the monomial divides, else None."""
    diff = (big | GUARDS) - small
    if diff & GUARDS != GUARDS:
        return None
    return diff ^ GUARDS


def _clean(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _coerce_coeff(c) -> Coeff:
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"coefficient must be rational, got {type(c).__name__}")
    return _clean(c if isinstance(c, (int, Fraction)) else Fraction(c))


class MultiPoly:
    """Immutable polynomial over the 11-symbol alphabet.

    Build with :meth:`var`, :meth:`const` and the arithmetic operators, or
    from an explicit ``{exponent_tuple: coefficient}`` mapping.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], Coeff] | None = None):
        packed: dict[int, Coeff] = {}
        for exps, c in (terms or {}).items():
            c = _coerce_coeff(c)
            if c:
                k = pack(exps)
                packed[k] = packed.get(k, 0) + c
        self._terms = {k: _clean(c) for k, c in packed.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Coeff]) -> MultiPoly:
        # caller guarantees: no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> MultiPoly:
        return cls._raw({})

    @classmethod
    def one(cls) -> MultiPoly:
        return cls._raw({0: 1})

    @classmethod
    def const(cls, c) -> MultiPoly:
        c = _coerce_coeff(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, sym: Symbol | str) -> MultiPoly:
        if isinstance(sym, str):
            sym = Symbol.from_name(sym)
        return cls._raw({var_key(sym.position): 1})

    @classmethod
    def coerce(cls, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, Symbol):
            return cls.var(x)
        return cls.const(x)

    # -- inspection -------------------------------------------------------

    @property
    def packed_terms(self) -> dict[int, Coeff]:
        """The underlying packed-key map. Treat as read-only."""
        return self._terms

    def terms(self) -> Iterator[tuple[tuple[int, ...], Coeff]]:
        """(exponents, coefficient) pairs in descending graded-lex order."""
        for k in sorted(self._terms, reverse=True):
            yield unpack(k), self._terms[k]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(0, 0)

    def leading_key(self) -> int:
        return max(self._terms)

    def leading_coeff(self) -> Coeff:
        return self._terms[max(self._terms)] if self._terms else 0

    def total_degree(self) -> int:
        return key_degree(max(self._terms)) if self._terms else -1

    def degree(self, sym: Symbol) -> int:
        pos = sym.position
        return max((var_exponent(k, pos) for k in self._terms), default=-1)

    def symbols(self) -> frozenset[Symbol]:
        acc = 0
        for k in self._terms:
            acc |= k
        return frozenset(s for s in SYMBOLS if var_exponent(acc, s.position))

    def coefficients(self) -> list[Coeff]:
        return list(self._terms.values())

    # -- ring operations --------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw({k: -c for k, c in self._terms.items()})

    def __pos__(self) -> MultiPoly:
        return self

    def __add__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.coerce(other)
            except TypeError:
                return NotImplemented
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for k, c in small.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _clean(s)
            else:
                del out[k]
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.coerce(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) - c
            if s:
                out[k] = _clean(s)
            else:
                del out[k]
        return MultiPoly._raw(out)

    def __rsub__(self, other) -> MultiPoly:
        return (-self).__add__(other)

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            try:
                c = _coerce_coeff(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        a, b = self._terms, other._terms
        if not a or not b:
            return MultiPoly.zero()
        if key_degree(max(a)) + key_degree(max(b)) > MAX_EXP:
            raise OverflowError("product degree too large")
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Coeff] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MultiPoly._raw({k: _clean(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> MultiPoly:
        if not c:
            return MultiPoly.zero()
        if c == 1:
            return self
        return MultiPoly._raw({k: _clean(v * c) for k, v in self._terms.items()})

    def mul_monomial(self, key: int, c: Coeff = 1) -> MultiPoly:
        return MultiPoly._raw({k + key: _clean(v * c) for k, v in self._terms.items()})

    def __pow__(self, n: int) -> MultiPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a non-negative int")
        result, base = MultiPoly.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and evaluation -----------------------------------------

    def diff(self, sym: Symbol) -> MultiPoly:
        pos = sym.position
        unit = var_key(pos)
        out = {}
        for k, c in self._terms.items():
            e = var_exponent(k, pos)
            if e:
                out[k - unit] = c * e
        return MultiPoly._raw(out)

    def evaluate(self, assignment: Mapping) -> Fraction:
        """Exact value under ``assignment`` (keys: Symbol or symbol name).

        Denominators are cleared up front so the inner loop is integer-only.
        """
        values: dict[int, Fraction] = {}
        for key, v in assignment.items():
            s = Symbol.from_name(key) if isinstance(key, str) else key
            values[s.position] = Fraction(v)
        if not self._terms:
            return Fraction(0)
        maxdeg = [0] * NVARS
        for k in self._terms:
            for pos in range(NVARS):
                e = var_exponent(k, pos)
                if e > maxdeg[pos]:
                    maxdeg[pos] = e
        used = [pos for pos in range(NVARS) if maxdeg[pos]]
        for pos in used:
            if pos not in values:
                raise MissingAssignmentError(SYMBOLS[pos].name)
        cden = lcm(*(c.denominator for c in self._terms.values()))
        npow = {pos: [1] for pos in used}
        dpow = {pos: [1] for pos in used}
        for pos in used:
            n, d = values[pos].numerator, values[pos].denominator
            for _ in range(maxdeg[pos]):
                npow[pos].append(npow[pos][-1] * n)
                dpow[pos].append(dpow[pos][-1] * d)
        total = 0
        for k, c in self._terms.items():
            term = int(c * cden)
            for pos in used:
                e = var_exponent(k, pos)
                term *= npow[pos][e] * dpow[pos][maxdeg[pos] - e]
            total += term
        common = cden
        for pos in used:
            common *= dpow[pos][maxdeg[pos]]
        return Fraction(total, common)

    def split(self, syms) -> dict[int, MultiPoly]:
        """View as a polynomial in ``syms`` with coefficients free of them.

        Returns {packed monomial in syms: coefficient polynomial}.
        """
        positions = [s.position for s in syms]
        groups: dict[int, dict[int, Coeff]] = {}
        for k, c in self._terms.items():
            outer = 0
            for pos in positions:
                e = var_exponent(k, pos)
                if e:
                    outer += var_key(pos, e)
            groups.setdefault(outer, {})[k - outer] = c
        return {o: MultiPoly._raw(t) for o, t in groups.items()}

    # -- integer normalization -------------------------------------------

    def content_and_primitive(self) -> tuple[Fraction, MultiPoly]:
        """(c, p) with self == c*p, p integral with coprime coefficients and
        positive leading coefficient."""
        if not self._terms:
            return Fraction(0), self
        vals = self._terms.values()
        den = lcm(*(c.denominator for c in vals))
        nums = [c * den for c in vals]
        g = gcd(*(int(n) for n in nums))
        if self._terms[max(self._terms)] < 0:
            g = -g
        prim = {k: int(c * den) // g for k, c in self._terms.items()}
        return Fraction(g, den), MultiPoly._raw(prim)

    def __str__(self) -> str:
        from .text import poly_to_text

        return poly_to_text(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def divexact(a: MultiPoly, b: MultiPoly) -> MultiPoly | None:
    """Quotient a/b if b divides a exactly in Q[symbols], else None."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    bt = b._terms
    if len(bt) == 1:
        (kb, cb), = bt.items()
        out = {}
        for k, c in a._terms.items():
            q = divides(kb, k)
            if q is None:
                return None
            out[q] = _exact_div(c, cb)
        return MultiPoly._raw(out)
    lkb = max(bt)
    lcb = bt[lkb]
    rest = [(k, c) for k, c in bt.items() if k != lkb]
    r = dict(a._terms)
    q: dict[int, Coeff] = {}
    while r:
        lk = max(r)
        mk = divides(lkb, lk)
        if mk is None:
            return None
        qc = _exact_div(r.pop(lk), lcb)
        q[mk] = qc
        for k, c in rest:
            kk = k + mk
            v = r.get(kk, 0) - qc * c
            if v:
                r[kk] = v
            else:
                r.pop(kk, None)
    return MultiPoly._raw({k: _clean(c) for k, c in q.items()})


def _exact_div(c: Coeff, d: Coeff) -> Coeff:
    if type(c) is int and type(d) is int and c % d == 0:
        return c // d
    return _clean(Fraction(c) / d)
