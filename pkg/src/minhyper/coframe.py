"""Exterior algebra on the principal coframe of a hypersurface in S^5.

Forms live over a mixed basis: the coframe w1..w4 and the connection forms
w_ij (i < j), with coefficients in :class:`RatFunc`.  ``d`` follows the
structure equations

    d w_i  = sum_j w_ij ^ w_j
    d w_ij = sum_k w_ik ^ w_kj - R_ijij w_i ^ w_j

and is applied to basis factors *before* connection forms are expanded as
w_ij = sum_m h(i,j,m) / (l_i - l_j) w_m.  Coefficients are never
differentiated unless they only involve the curvatures.

Wedge products whose degree would exceed 4 return the zero 4-form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Mapping

from .hypersurface import INDICES, ReductionContext, default_context
from .symkernel import DERIVATIVE_SYMBOLS, LAMBDA_SYMBOLS, RatFunc

TOP_DEGREE = 4
CONNECTION_PAIRS = tuple(combinations(INDICES, 2))


class DerivativeSymbolError(ValueError):
    """A coefficient that d cannot differentiate (it carries h-derivatives)."""


@dataclass(frozen=True)
class BasisOneForm:
    """``Coframe(m)`` is w_m; ``Connection(i, j)`` with i < j is w_ij."""

    kind: str
    indices: tuple[int, ...]

    @property
    def slot(self) -> int:
        if self.kind == "coframe":
            return self.indices[0] - 1
        return 4 + CONNECTION_PAIRS.index(self.indices)

    @property
    def name(self) -> str:
        return "w" + "".join(map(str, self.indices))


def Coframe(m: int) -> BasisOneForm:
    if m not in INDICES:
        raise ValueError(f"coframe index {m} outside 1..4")
    return BasisOneForm("coframe", (m,))


def Connection(i: int, j: int) -> BasisOneForm:
    if (i, j) not in CONNECTION_PAIRS:
        raise ValueError("Connection(i, j) needs 1 <= i < j <= 4; use connection_form")
    return BasisOneForm("connection", (i, j))


_BASIS = tuple([Coframe(m) for m in INDICES] + [Connection(i, j) for i, j in CONNECTION_PAIRS])


def _sort_word(word: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """(sign, sorted word); sign 0 if a factor repeats."""
    if len(set(word)) != len(word):
        return 0, ()
    w = list(word)
    sign = 1
    for i in range(1, len(w)):
        j = i
        while j and w[j - 1] > w[j]:
            w[j - 1], w[j] = w[j], w[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(w)


class DForm:
    """Homogeneous exterior form: {sorted basis word: RatFunc coefficient}."""

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Mapping[tuple, RatFunc] | None = None):
        if not 0 <= degree <= TOP_DEGREE:
            raise ValueError(f"form degree {degree} outside 0..{TOP_DEGREE}")
        self.degree = degree
        acc: dict[tuple[int, ...], RatFunc] = {}
        for word, c in (terms or {}).items():
            slots = tuple(b.slot if isinstance(b, BasisOneForm) else b for b in word)
            if len(slots) != degree:
                raise ValueError("word length does not match the form degree")
            sign, w = _sort_word(slots)
            if sign:
                _accumulate(acc, w, RatFunc.coerce(c) * sign)
        self._terms = acc

    @classmethod
    def _raw(cls, degree: int, terms: dict) -> DForm:
        obj = cls.__new__(cls)
        obj.degree = degree
        obj._terms = terms
        return obj

    @classmethod
    def scalar(cls, c) -> DForm:
        c = RatFunc.coerce(c)
        return cls._raw(0, {(): c} if c else {})

    @classmethod
    def basis(cls, b: BasisOneForm) -> DForm:
        return cls._raw(1, {(b.slot,): RatFunc.coerce(1)})

    def items(self) -> Iterator[tuple[tuple[BasisOneForm, ...], RatFunc]]:
        for w in sorted(self._terms):
            yield tuple(_BASIS[s] for s in w), self._terms[w]

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, *word: BasisOneForm) -> RatFunc:
        """Coefficient of the given word, with the sign of its reordering."""
        sign, w = _sort_word(tuple(b.slot for b in word))
        if not sign:
            return RatFunc.coerce(0)
        return self._terms.get(w, RatFunc.coerce(0)) * sign

    def volume_coefficient(self) -> RatFunc:
        """Coefficient of w1^w2^w3^w4 (the volume form dM)."""
        if self.degree != TOP_DEGREE:
            raise ValueError("only 4-forms have a volume coefficient")
        return self._terms.get((0, 1, 2, 3), RatFunc.coerce(0))

    def has_connection_factors(self) -> bool:
        return any(s >= 4 for w in self._terms for s in w)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __add__(self, other: DForm) -> DForm:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self._terms)
        for w, c in other._terms.items():
            _accumulate(out, w, c)
        return DForm._raw(self.degree, out)

    def __neg__(self) -> DForm:
        return DForm._raw(self.degree, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: DForm) -> DForm:
        return self + (-other)

    def scale(self, c) -> DForm:
        c = RatFunc.coerce(c)
        if c.is_zero():
            return DForm._raw(self.degree, {})
        return DForm._raw(self.degree, {w: v * c for w, v in self._terms.items()})

    def __mul__(self, c) -> DForm:
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other: DForm) -> DForm:
        return wedge(self, other)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, c in self.items():
            name = "^".join(b.name for b in word) or "1"
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DForm({self.degree}, {self})"


def _accumulate(acc: dict, w: tuple, c: RatFunc) -> None:
    s = acc[w] + c if w in acc else c
    if s.is_zero():
        acc.pop(w, None)
    else:
        acc[w] = s


def omega(m: int) -> DForm:
    return DForm.basis(Coframe(m))


def connection_form(i: int, j: int) -> DForm:
    """w_ij as a basis form, using w_ji = -w_ij and w_ii = 0."""
    if i == j:
        return DForm._raw(1, {})
    if i < j:
        return DForm.basis(Connection(i, j))
    return -DForm.basis(Connection(j, i))


def wedge(a: DForm, b: DForm) -> DForm:
    deg = a.degree + b.degree
    if deg > TOP_DEGREE:
        return DForm._raw(TOP_DEGREE, {})
    out: dict[tuple[int, ...], RatFunc] = {}
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            sign, w = _sort_word(wa + wb)
            if sign:
                c = ca * cb
                _accumulate(out, w, c if sign > 0 else -c)
    return DForm._raw(deg, out)


def wedge_all(*forms: DForm) -> DForm:
    out = DForm.scalar(1)
    for f in forms:
        out = wedge(out, f)
    return out


@lru_cache(maxsize=None)
def _expanded_connection(i: int, j: int, ctx: ReductionContext) -> DForm:
    diff = ctx.lam(i) - ctx.lam(j)
    terms = {(m - 1,): ctx.h(i, j, m) / diff for m in INDICES}
    return DForm._raw(1, {w: c for w, c in terms.items() if c})


def expand_connection(f: DForm, ctx: ReductionContext | None = None) -> DForm:
    """Replace every w_ij factor by its coframe expansion."""
    ctx = ctx or default_context()
    out = DForm._raw(f.degree, {})
    for w, c in f._terms.items():
        if all(s < 4 for s in w):
            out = out + DForm._raw(f.degree, {w: c})
            continue
        factors = []
        for s in w:
            b = _BASIS[s]
            if b.kind == "coframe":
                factors.append(DForm.basis(b))
            else:
                factors.append(_expanded_connection(*b.indices, ctx))
        out = out + wedge_all(*factors).scale(c)
    return out


def _lambda_only(c: RatFunc) -> bool:
    return not (c.symbols() & frozenset(DERIVATIVE_SYMBOLS))


def d_function(f, ctx: ReductionContext | None = None) -> DForm:
    """df = sum_m e_m(f) w_m with e_m(l_a) = h(a,a,m).

    ``f`` is a polynomial (or rational function) in l1..l3.
    """
    ctx = ctx or default_context()
    f = RatFunc.coerce(f)
    if not _lambda_only(f):
        raise DerivativeSymbolError(
            "d of a coefficient with derivative symbols needs second covariant derivatives"
        )
    partials = [(a, f.diff(sym)) for a, sym in zip((1, 2, 3), LAMBDA_SYMBOLS)]
    terms = {}
    for m in INDICES:
        c = RatFunc.coerce(0)
        for a, p in partials:
            if p:
                c = c + p * ctx.h(a, a, m)
        if c:
            terms[(m - 1,)] = c
    return DForm._raw(1, terms)


@lru_cache(maxsize=None)
def _d_structure(b: BasisOneForm, ctx: ReductionContext) -> DForm:
    if b.kind == "coframe":
        (i,) = b.indices
        out = DForm._raw(2, {})
        for j in INDICES:
            if j != i:
                out = out + wedge(connection_form(i, j), omega(j))
        return out
    i, j = b.indices
    out = DForm._raw(2, {})
    for k in INDICES:
        if k not in (i, j):
            out = out + wedge(connection_form(i, k), connection_form(k, j))
    return out - wedge(omega(i), omega(j)).scale(ctx.R(i, j, i, j))


def d_structure(b: BasisOneForm, ctx: ReductionContext | None = None) -> DForm:
    """Right-hand side of the structure equation for one basis 1-form."""
    return _d_structure(b, ctx or default_context())


def d_form(f: DForm, ctx: ReductionContext | None = None) -> DForm:
    """Exterior derivative by the graded Leibniz rule over basis words."""
    ctx = ctx or default_context()
    if f.degree >= TOP_DEGREE:
        return DForm._raw(TOP_DEGREE, {})
    out = DForm._raw(f.degree + 1, {})
    for w, c in f._terms.items():
        if not _lambda_only(c):
            raise DerivativeSymbolError(
                "coefficient carries derivative symbols; d would need h_{ij,kl}"
            )
        factors = [DForm.basis(_BASIS[s]) for s in w]
        if not c.is_polynomial() or not c.num.is_constant():
            out = out + wedge(d_function(c, ctx), wedge_all(*factors))
        for r, s in enumerate(w):
            piece = wedge_all(*factors[:r], d_structure(_BASIS[s], ctx), *factors[r + 1:])
            out = out + (piece.scale(c) if r % 2 == 0 else piece.scale(-c))
    return out


__all__ = [
    "BasisOneForm",
    "Coframe",
    "Connection",
    "DForm",
    "DerivativeSymbolError",
    "omega",
    "connection_form",
    "wedge",
    "wedge_all",
    "expand_connection",
    "d_function",
    "d_structure",
    "d_form",
]
