"""Principal-curvature models of minimal hypersurfaces in S^5.

Invariants of a curvature quadruple, the minimal isoparametric examples
(equator, Clifford products, the g = 4 hypersurface with S = 12), a solver
recovering the curvatures from f1, f2, f3 when g <= 3, and classification.

Exact values are ints, Fractions or :class:`QuadSurd` (a + b*sqrt(d));
anything else is treated as floating point with tolerance 1e-9.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import combinations
from math import comb
from numbers import Rational
from typing import Sequence, Union

TOL = 1e-9


@total_ordering
class QuadSurd:
    """a + b*sqrt(d) with rational a, b and a square-free integer d > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 2):
        self.a, self.b, self.d = Fraction(a), Fraction(b), d

    @classmethod
    def sqrt(cls, d: int) -> QuadSurd:
        return cls(0, 1, d)

    def _lift(self, x) -> QuadSurd:
        if isinstance(x, QuadSurd):
            if x.d != self.d and x.b and self.b:
                raise ValueError("cannot mix surds with different radicands")
            return x if x.b else QuadSurd(x.a, 0, self.d)
        if isinstance(x, Rational):
            return QuadSurd(x, 0, self.d)
        raise TypeError

    def _d(self, o: QuadSurd) -> int:
        return self.d if self.b else o.d

    def __add__(self, o):
        try:
            o = self._lift(o)
        except TypeError:
            return float(self) + o if isinstance(o, float) else NotImplemented
        return QuadSurd(self.a + o.a, self.b + o.b, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        try:
            o = self._lift(o)
        except TypeError:
            return float(self) * o if isinstance(o, float) else NotImplemented
        d = self._d(o)
        return QuadSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadSurd:
        return QuadSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, o):
        try:
            o = self._lift(o)
        except TypeError:
            return float(self) / o if isinstance(o, float) else NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        p = self * o.conjugate()
        return QuadSurd(p.a / n, p.b / n, p.d)

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __pow__(self, n: int):
        if n < 0:
            return QuadSurd(1, 0, self.d) / self ** (-n)
        out = QuadSurd(1, 0, self.d)
        for _ in range(n):
            out = out * self
        return out

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 d
        return sa if self.a * self.a > self.b * self.b * self.d else -sa

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, o):
        try:
            o = self._lift(o)
        except (TypeError, ValueError):
            return False if not isinstance(o, float) else float(self) == o
        return self.a == o.a and self.b == o.b

    def __lt__(self, o):
        if isinstance(o, float):
            return float(self) < o
        return (self - o).sign() < 0

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})" if self.b == 1 else f"{self.b}*sqrt({self.d})"
        if self.b == -1:
            root = f"-sqrt({self.d})"
        if self.a == 0:
            return root
        return f"{self.a} + {root}" if self.b > 0 else f"{self.a} - {root.lstrip('-')}"

    __repr__ = __str__


Number = Union[int, Fraction, QuadSurd, float]


def is_exact(x) -> bool:
    return isinstance(x, (Rational, QuadSurd))


def _simplify(x):
    if isinstance(x, QuadSurd) and x.is_rational():
        x = x.a
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _is_zero(x, tol: float = TOL) -> bool:
    return x == 0 if is_exact(x) else abs(x) <= tol


def _close(x, y, tol: float = TOL) -> bool:
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(float(x) - float(y)) <= tol * max(1.0, abs(float(x)), abs(float(y)))


# -- principal curvatures and invariants ---------------------------------


def _runs(values: Sequence[Number], tol: float) -> tuple[int, ...]:
    runs: list[int] = []
    prev = None
    for v in values:
        if prev is not None and _close(v, prev, tol):
            runs[-1] += 1
        else:
            runs.append(1)
        prev = v
    return tuple(runs)


@dataclass(frozen=True)
class PrincipalCurvatures:
    """Four principal curvatures, sorted descending, with multiplicities."""

    values: tuple
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != 4 or sum(self.multiplicities) != 4:
            raise ValueError("expected four curvatures and a partition of 4")

    @classmethod
    def from_values(cls, values: Sequence[Number], tol: float = TOL) -> PrincipalCurvatures:
        if len(values) != 4:
            raise ValueError("a hypersurface in S^5 has exactly four principal curvatures")
        vals = tuple(sorted((_simplify(v) for v in values), key=float, reverse=True))
        return cls(vals, _runs(vals, tol))

    @property
    def g(self) -> int:
        return len(self.multiplicities)

    def isclose(self, other: PrincipalCurvatures, tol: float = TOL) -> bool:
        return self.multiplicities == other.multiplicities and all(
            _close(a, b, tol) for a, b in zip(self.values, other.values)
        )

    def to_dict(self) -> dict:
        return {
            "values": [_json_number(v) for v in self.values],
            "multiplicities": list(self.multiplicities),
        }


@dataclass(frozen=True)
class InvariantSet:
    f1: Number
    f2: Number
    f3: Number
    f4: Number
    sigma1: Number
    sigma2: Number
    sigma3: Number
    sigma4: Number
    S: Number
    H: Number
    H3: Number
    R: Number
    g: int

    @property
    def exact(self) -> bool:
        return all(is_exact(getattr(self, k)) for k in ("f1", "f2", "f3", "f4"))

    def to_dict(self) -> dict:
        return {k: (_json_number(v) if k != "g" else v) for k, v in self.__dict__.items()}


def _json_number(x):
    x = _simplify(x)
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return x
    return str(x)


class NewtonRelationError(ArithmeticError):
    """Power sums and elementary symmetric functions disagree."""


def invariants(pc: PrincipalCurvatures | Sequence[Number], tol: float = TOL) -> InvariantSet:
    if not isinstance(pc, PrincipalCurvatures):
        pc = PrincipalCurvatures.from_values(pc, tol)
    vals = pc.values
    f = [_simplify(sum((v ** k for v in vals), 0)) for k in range(1, 5)]
    s = []
    for r in range(1, 5):
        total = 0
        for idx in combinations(vals, r):
            prod = 1
            for v in idx:
                prod = prod * v
            total = total + prod
        s.append(_simplify(total))
    f1, f2, f3, f4 = f
    H = _simplify(f1 / Fraction(4)) if is_exact(f1) else f1 / 4
    H3 = _simplify(s[2] / Fraction(comb(4, 3))) if is_exact(s[2]) else s[2] / comb(4, 3)
    R = _simplify(12 + 16 * H * H - f2)
    if _is_zero(f1, tol):
        checks = (
            (f2, -2 * s[1]),
            (f3, 3 * s[2]),
            (f4, f2 * f2 / Fraction(2) - 4 * s[3] if is_exact(f2) else f2 * f2 / 2 - 4 * s[3]),
        )
        for lhs, rhs in checks:
            if not _close(lhs, rhs, tol):
                raise NewtonRelationError(f"{lhs} != {rhs}")
    return InvariantSet(f1, f2, f3, f4, *s, S=f2, H=H, H3=H3, R=R, g=pc.g)


# -- minimal isoparametric models ----------------------------------------


class InvalidModelError(ValueError):
    """No minimal isoparametric model with that (g, multiplicity pattern)."""


def parse_pattern(pattern) -> tuple[int, ...]:
    if isinstance(pattern, str):
        pattern = [int(p) for p in pattern.replace(" ", "").split(",") if p]
    parts = tuple(int(p) for p in pattern)
    if any(p < 1 for p in parts) or sum(parts) != 4:
        raise InvalidModelError(f"multiplicities {parts} must be positive and sum to 4")
    return parts


def minimal_isoparametric(g: int, pattern) -> PrincipalCurvatures:
    if g == 3:
        raise InvalidModelError(
            "g = 3 is impossible: an isoparametric hypersurface with three principal "
            "curvatures has equal multiplicities m, and 3m = 4 has no integer solution"
        )
    parts = parse_pattern(pattern)
    if len(parts) != g:
        raise InvalidModelError(f"pattern {parts} has {len(parts)} parts, expected g = {g}")
    key = tuple(sorted(parts))
    if g == 1 and key == (4,):
        values = [0, 0, 0, 0]
    elif g == 2 and key == (2, 2):
        values = [1, 1, -1, -1]
    elif g == 2 and key == (1, 3):
        r3 = QuadSurd.sqrt(3)
        big, small = r3, QuadSurd(0, Fraction(-1, 3), 3)
        values = [big] + [small] * 3
        if parts == (3, 1):
            values = [-small] * 3 + [-big]
    elif g == 4 and key == (1, 1, 1, 1):
        # cot(pi/8 + (k-1) pi/4), k = 1..4
        values = [QuadSurd(1, 1), QuadSurd(-1, 1), QuadSurd(1, -1), QuadSurd(-1, -1)]
    else:
        raise InvalidModelError(f"no minimal isoparametric model with g = {g}, pattern {parts}")
    pc = PrincipalCurvatures.from_values(values)
    if not _is_zero(invariants(pc).f1):
        raise ArithmeticError("model is not minimal")
    return pc


VALID_MODELS = ((1, (4,)), (2, (2, 2)), (2, (1, 3)), (4, (1, 1, 1, 1)))


# -- curvature solver ------------------------------------------------------


def _to_fraction(x) -> Fraction:
    if isinstance(x, QuadSurd):
        return Fraction(x.a) if x.is_rational() else Fraction(float(x))
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(float(x))


def _padd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _pscale(p, c):
    return [c * a for a in p]


def _ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _peval(p, x):
    acc = Fraction(0) if isinstance(x, Fraction) else 0.0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pderiv(p):
    return [i * c for i, c in enumerate(p)][1:]


def _prem(a, b):
    a = _ptrim(a)
    b = _ptrim(b)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _ptrim(a)
    return a


def _pgcd(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _prem(a, b)
    return [c / a[-1] for c in a]


def _pdiv(a, b):
    a = _ptrim(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _ptrim(a)
    return q


def _sturm_chain(p):
    chain = [p, _pderiv(p)]
    while True:
        r = _prem(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append([-c for c in r])


def _sign_changes(chain, x) -> int:
    signs = [s for s in ((_peval(p, x) > 0) - (_peval(p, x) < 0) for p in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_roots(p: Sequence) -> list:
    """All real roots of a rational polynomial (coefficients low to high).

    The count is certified by a Sturm sequence on the square-free part,
    counting roots in half-open intervals (lo, hi]; each root is isolated by
    bisection and returned exactly when rational (hit directly or found by a
    small-denominator guess that evaluates to zero), otherwise as a float
    accurate to about 1e-15.
    """
    p = _ptrim([Fraction(c) for c in p])
    if len(p) <= 1:
        if not p:
            raise ValueError("the zero polynomial has infinitely many roots")
        return []
    sqfree = _ptrim(_pdiv(p, _pgcd(p, _pderiv(p)))) if len(p) > 2 else p
    chain = _sturm_chain(sqfree)

    def count(lo, hi):
        return _sign_changes(chain, lo) - _sign_changes(chain, hi)

    bound = 1 + max(abs(c / sqfree[-1]) for c in sqfree[:-1])
    roots = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 1:
            roots.append(_refine(sqfree, lo, hi, count))
        elif n > 1:
            mid = (lo + hi) / 2
            stack += [(lo, mid), (mid, hi)]
    return sorted(roots, key=float)


def _refine(p, lo: Fraction, hi: Fraction, count):
    """The single root of p in (lo, hi]."""
    if _peval(p, hi) == 0:
        return hi
    # move lo off a root that belongs to the neighbouring interval
    while _peval(p, lo) == 0:
        mid = (lo + hi) / 2
        if _peval(p, mid) == 0:
            return mid
        if count(mid, hi) == 1:
            lo = mid
        else:
            hi = mid
    flo = _peval(p, lo)
    for _ in range(200):
        mid = (lo + hi) / 2
        fm = _peval(p, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < Fraction(1, 10 ** 18):
            break
    guess = ((lo + hi) / 2).limit_denominator(10 ** 6)
    if lo <= guess <= hi and _peval(p, guess) == 0:
        return guess
    return float((lo + hi) / 2)


class PatternError(ValueError):
    """Multiplicity pattern the solver does not handle."""


def _distinct(values, tol: float) -> bool:
    return all(not _close(a, b, tol) for a, b in combinations(values, 2))


def solve_curvatures(pattern, f1, f2, f3, tol: float = TOL) -> list[PrincipalCurvatures]:
    """All real curvature sets with the given multiplicities and f1, f2, f3.

    The distinct values x_i with multiplicities m_i solve
    sum_i m_i x_i^k = f_k for k = 1, 2, 3.  Elimination leaves one
    univariate polynomial whose real roots are found with a certified count;
    the set of solutions is therefore finite.
    """
    parts = parse_pattern(pattern)
    if len(parts) > 3:
        raise PatternError("four distinct curvatures are handled by the symbolic engine")
    F1, F2, F3 = (_to_fraction(v) for v in (f1, f2, f3))
    if F2 < 0:
        raise ValueError("f2 is a sum of squares and cannot be negative")
    exact = all(is_exact(v) and not (isinstance(v, QuadSurd) and not v.is_rational()) for v in (f1, f2, f3))
    tol_eq = 0.0 if exact else tol

    def consistent(values, k, target):
        got = sum(m * v ** k for m, v in zip(parts, values))
        if exact and all(is_exact(v) for v in values):
            return got == target
        return abs(float(got) - float(target)) <= tol * max(1.0, abs(float(target)))

    solutions: list[tuple] = []
    if len(parts) == 1:
        x = F1 / 4
        candidates = [(x,)]
    elif len(parts) == 2:
        m1, m2 = parts
        # x = (f1 - m2 y)/m1 substituted into m1 x^2 + m2 y^2 = f2
        quad = [F1 * F1 / m1 - F2, -2 * F1 * m2 / m1, Fraction(m2 * m2, m1) + m2]
        roots = _quadratic_roots(quad) if exact else None
        if roots is None:
            roots = real_roots(quad)
        candidates = [((F1 - m2 * y) / m1, y) for y in roots]
    else:
        candidates = _solve_three(parts, F1, F2, F3, tol_eq or tol)
    for values in candidates:
        if not all(consistent(values, k, t) for k, t in ((1, F1), (2, F2), (3, F3))):
            continue
        if not _distinct(values, tol):
            continue
        full = [v for m, v in zip(parts, values) for _ in range(m)]
        pc = PrincipalCurvatures.from_values(full, tol)
        if pc not in solutions:
            solutions.append(pc)
    return solutions


def _solve_three(parts, F1, F2, F3, tol):
    """Two simple values x, y and one value z of multiplicity two."""
    if sorted(parts) != [1, 1, 2]:
        raise PatternError(f"unsupported pattern {parts}")
    zi = parts.index(2)
    # s = x + y, q = x^2 + y^2, x^3 + y^3 = s^3 - 3 s p with p = xy = (s^2 - q)/2
    s = [F1, Fraction(-2)]
    q = [F2, Fraction(0), Fraction(-2)]
    p = _pscale(_padd(_pmul(s, s), _pscale(q, -1)), Fraction(1, 2))
    cubic_sum = _padd(_pmul(_pmul(s, s), s), _pscale(_pmul(s, p), -3))
    target = [F3, Fraction(0), Fraction(0), Fraction(-2)]
    eq = _padd(target, _pscale(cubic_sum, -1))
    out = []
    for z in real_roots(eq):
        sv, pv = _peval(s, z), _peval(p, z)
        disc = sv * sv - 4 * pv
        if disc < -tol:
            continue
        if isinstance(disc, Fraction):
            root = _surd_sqrt(disc)
            if root is None:
                root = math.sqrt(max(float(disc), 0.0))
        else:
            root = math.sqrt(max(disc, 0.0))
        x, y = (sv + root) / 2, (sv - root) / 2
        values = [x, y]
        values.insert(zi, z)
        out.append(tuple(values))
    return out


def _squarefree_split(n: int, limit: int = 10 ** 4):
    """n = k^2 * r with r square-free, or None if n has a factor above limit^2."""
    k, r, p = 1, 1, 2
    while p * p <= n:
        if p > limit:
            return None
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            r *= p
        p += 1
    return k, r * n


def _surd_sqrt(q: Fraction):
    """sqrt(q) as a Fraction or QuadSurd, or None if it cannot be split cheaply."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    split = _squarefree_split(q.numerator * q.denominator)
    if split is None:
        return None
    k, r = split
    c = Fraction(k, q.denominator)
    return c if r == 1 else QuadSurd(0, c, r)


def _quadratic_roots(p):
    """Exact real roots of c0 + c1 t + c2 t^2, or None to fall back to bisection."""
    c0, c1, c2 = p
    if c2 == 0:
        return None
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    root = _surd_sqrt(disc)
    if root is None:
        return None
    if root == 0:
        return [-c1 / (2 * c2)]
    return [(-c1 + root) / (2 * c2), (-c1 - root) / (2 * c2)]


# -- classification --------------------------------------------------------


class ModelClass(enum.Enum):
    EQUATOR = "Equator"
    CLIFFORD_PRODUCT = "CliffordProduct"
    CARTAN_G4 = "CartanG4"
    NOT_IN_THEOREM_FAMILY = "NotInTheoremFamily"


class NotMinimalError(ValueError):
    """Classification only applies to minimal hypersurfaces (f1 = 0)."""


def classify(inv: InvariantSet, tol: float = TOL) -> ModelClass:
    if not _is_zero(inv.f1, tol):
        raise NotMinimalError(f"f1 = {inv.f1} is not zero")
    if _close(inv.S, 0, tol):
        return ModelClass.EQUATOR
    if _close(inv.S, 4, tol) and inv.g == 2:
        return ModelClass.CLIFFORD_PRODUCT
    if _close(inv.S, 12, tol) and inv.g == 4 and _is_zero(inv.H3, tol):
        return ModelClass.CARTAN_G4
    return ModelClass.NOT_IN_THEOREM_FAMILY
