"""Multivariate polynomial gcd over Q.

Recursive content/primitive-part scheme with a subresultant PRS in the
chosen main variable.  Two shortcuts matter a lot for this engine's
workload, where numerators carry derivative symbols and denominators are
products of curvature differences:

* symbols present in only one argument are split off: the gcd is then the
  gcd of the coefficient polynomials with respect to those symbols;
* if one primitive argument divides the other, it is the gcd.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd as igcd

from .poly import MultiPoly, divexact, var_exponent, var_key
from .symbols import SYMBOLS


class ZeroGcdError(ValueError):
    """gcd(0, 0) is undefined."""


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, primitive over Z with positive leading coefficient."""
    if a.is_zero() and b.is_zero():
        raise ZeroGcdError("gcd of two zero polynomials")
    if a.is_zero():
        return b.content_and_primitive()[1]
    if b.is_zero():
        return a.content_and_primitive()[1]
    return _pgcd(a.content_and_primitive()[1], b.content_and_primitive()[1])


def _support(p: MultiPoly) -> frozenset[int]:
    acc = 0
    for k in p.packed_terms:
        acc |= k
    return frozenset(_positions(acc))


def _positions(mask: int) -> list[int]:
    return [s.position for s in SYMBOLS if var_exponent(mask, s.position)]


def _int_content(p: MultiPoly) -> int:
    return igcd(*p.packed_terms.values())


def _primitive(p: MultiPoly) -> tuple[int, MultiPoly]:
    c = _int_content(p)
    if p.leading_coeff() < 0:
        c = -c
    if c == 1:
        return 1, p
    return c, MultiPoly._raw({k: v // c for k, v in p.packed_terms.items()})


def _zgcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """gcd in Z[symbols] of two nonzero integral polynomials."""
    ca, pa = _primitive(a)
    cb, pb = _primitive(b)
    return _pgcd(pa, pb).scale(igcd(ca, cb))


def _fold(polys) -> MultiPoly:
    it = iter([p for p in polys if not p.is_zero()])
    g = next(it)
    for p in it:
        if g.is_constant():
            break
        g = _zgcd(g, p)
    _, g = _primitive(g) if not g.is_constant() else (1, g)
    return g


@lru_cache(maxsize=1 << 16)
def _pgcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """gcd of two primitive integral polynomials with positive leading coefficients."""
    one = MultiPoly.one()
    if a == b:
        return a
    if a.is_constant() or b.is_constant():
        return one
    ta, tb = a.packed_terms, b.packed_terms
    if len(ta) == 1 or len(tb) == 1:
        mono, other = (a, b) if len(ta) == 1 else (b, a)
        (key,) = mono.packed_terms
        out = 0
        for pos in _positions(key):
            e = min(var_exponent(k, pos) for k in other.packed_terms)
            e = min(e, var_exponent(key, pos))
            if e:
                out += var_key(pos, e)
        return MultiPoly._raw({out: 1})

    sa, sb = _support(a), _support(b)
    if sa != sb:
        only_a = sorted(sa - sb)
        only_b = sorted(sb - sa)
        parts = []
        parts += a.split([SYMBOLS[p] for p in only_a]).values() if only_a else [a]
        parts += b.split([SYMBOLS[p] for p in only_b]).values() if only_b else [b]
        parts.sort(key=len)
        g = _fold(parts)
        return g if not g.is_constant() else one

    small, big = (a, b) if len(ta) <= len(tb) else (b, a)
    if divexact(big, small) is not None:
        return small

    pos = min(sorted(sa), key=lambda p: max(a.degree(SYMBOLS[p]), b.degree(SYMBOLS[p])))
    ua, ub = _univariate(a, pos), _univariate(b, pos)
    conta, contb = _fold(sorted(ua, key=len)), _fold(sorted(ub, key=len))
    cont = _zgcd(conta, contb) if not (conta.is_constant() or contb.is_constant()) else one
    if not conta.is_constant():
        ua = [_divexact(c, conta) for c in ua]
    if not contb.is_constant():
        ub = [_divexact(c, contb) for c in ub]
    if len(ua) < len(ub):
        ua, ub = ub, ua
    g = _subresultant_gcd(ua, ub)
    gcont = _fold(sorted(g, key=len))
    if not gcont.is_constant():
        g = [_divexact(c, gcont) for c in g]
    _, g = _primitive(_from_univariate(g, pos) * cont)
    return g


def _divexact(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    q = divexact(a, b)
    if q is None:
        raise ArithmeticError("expected exact division")
    return q


def _univariate(p: MultiPoly, pos: int) -> list[MultiPoly]:
    """Coefficient list in the symbol at ``pos`` (index = degree)."""
    buckets: dict[int, dict] = {}
    for k, c in p.packed_terms.items():
        e = var_exponent(k, pos)
        buckets.setdefault(e, {})[k - var_key(pos, e)] = c
    n = max(buckets)
    return [MultiPoly._raw(buckets.get(e, {})) for e in range(n + 1)]


def _from_univariate(coeffs: list[MultiPoly], pos: int) -> MultiPoly:
    out = {}
    for e, c in enumerate(coeffs):
        shift = var_key(pos, e) if e else 0
        for k, v in c.packed_terms.items():
            out[k + shift] = v
    return MultiPoly._raw(out)


def _strip(f: list[MultiPoly]) -> list[MultiPoly]:
    while f and f[-1].is_zero():
        f.pop()
    return f


def _prem(f: list[MultiPoly], g: list[MultiPoly]) -> list[MultiPoly]:
    dg = len(g) - 1
    lcg = g[-1]
    r = list(f)
    e = len(f) - len(g) + 1
    while len(r) - 1 >= dg:
        lcr = r[-1]
        shift = len(r) - 1 - dg
        r = [lcg * c for c in r]
        for i, gc in enumerate(g):
            r[i + shift] = r[i + shift] - lcr * gc
        r.pop()
        _strip(r)
        e -= 1
        if not r:
            return r
    if e > 0:
        m = lcg ** e
        r = [m * c for c in r]
    return r


def _subresultant_gcd(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """gcd of two primitive univariate polynomials up to a content factor."""
    one = MultiPoly.one()
    g = h = one
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return b
        if len(r) == 1:
            return [one]
        den = g * h ** delta
        a, b = b, [_divexact(c, den) for c in r]
        g = a[-1]
        if delta:
            h = _divexact(g ** delta, h ** (delta - 1))
