"""Constraint state for a minimal hypersurface in S^5 with four distinct
principal curvatures, written in a principal (diagonalizing) frame.

Raw quantities are the curvatures l1..l4, the covariant derivatives
h(i,j,k) of the second fundamental form and the curvature tensor
R(i,j,k,l).  :class:`ReductionContext` maps them into the 11-symbol
alphabet:

* h(i,j,k) is totally symmetric, so it is keyed by the sorted triple;
* l4 = -(l1 + l2 + l3), since the hypersurface is minimal;
* h(a,a,m), a in 1..3, is a multiple of h(4,4,m) because the power sums
  f1, f2, f3 are constant (so e_m(f_k) = 0 for k = 1, 2, 3);
* R(i,j,k,l) comes from the Gauss equation in the principal frame.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Union

from .symkernel import MultiPoly, RatFunc, Symbol, evaluate_expression

INDICES = (1, 2, 3, 4)

REDUCIBLE = "reducible"
FREE_D = "free-D"
FREE_T = "free-T"


class FrameIndexError(ValueError):
    """Frame index outside 1..4."""


def _check_indices(*idx: int) -> None:
    for i in idx:
        if i not in INDICES:
            raise FrameIndexError(f"frame index {i!r} outside 1..4")


@dataclass(frozen=True, order=True)
class DerivTriple:
    """h_{ij,k} up to permutation of (i, j, k); stored sorted."""

    indices: tuple[int, int, int]

    def __post_init__(self):
        _check_indices(*self.indices)
        if tuple(sorted(self.indices)) != self.indices:
            raise ValueError("DerivTriple indices must be sorted; use codazzi_canon")

    @property
    def kind(self) -> str:
        i, j, k = self.indices
        if i != j and j != k:
            return FREE_T
        doubled = j  # the middle entry always belongs to the repeated pair
        if doubled == 4:
            return FREE_D
        return REDUCIBLE

    @property
    def doubled(self) -> int:
        """The repeated index a of a triple {a, a, m}."""
        return self.indices[1]

    @property
    def other(self) -> int:
        """The index m of a triple {a, a, m} (m == a for {a, a, a})."""
        i, j, k = self.indices
        return k if i == j else i

    def symbol(self) -> Symbol:
        if self.kind == FREE_D:
            return Symbol.d(self.other)
        if self.kind == FREE_T:
            return Symbol.t(*self.indices)
        raise ValueError(f"{self} is not a free symbol")

    def __str__(self) -> str:
        i, j, k = self.indices
        return f"h{i}{j},{k}"


def codazzi_canon(i: int, j: int, k: int) -> DerivTriple:
    _check_indices(i, j, k)
    return DerivTriple(tuple(sorted((i, j, k))))


def _lam(i: int) -> MultiPoly:
    _check_indices(i)
    if i == 4:
        return -(MultiPoly.var("l1") + MultiPoly.var("l2") + MultiPoly.var("l3"))
    return MultiPoly.var(Symbol.lam(i))


def lam(i: int) -> MultiPoly:
    """Principal curvature l_i with l4 eliminated."""
    return _lam(i)


def gauss(i: int, j: int, k: int, l: int) -> MultiPoly:
    """R_{ijkl} in the principal frame: (1 + l_i l_j)(d_ik d_jl - d_il d_jk)."""
    _check_indices(i, j, k, l)
    delta = (i == k and j == l) - (i == l and j == k)
    if not delta or i == j:
        return MultiPoly.zero()
    return (1 + lam(i) * lam(j)) * delta


def power_sum(k: int) -> MultiPoly:
    """f_k = l1^k + ... + l4^k with l4 eliminated."""
    if not 1 <= k <= 4:
        raise ValueError("power_sum index must be in 1..4")
    return sum((lam(i) ** k for i in INDICES), MultiPoly.zero())


def sigma(r: int) -> MultiPoly:
    """Elementary symmetric polynomial sigma_r(l1..l4) with l4 eliminated."""
    if not 0 <= r <= 4:
        raise ValueError("sigma index must be in 0..4")
    out = MultiPoly.zero()
    for idx in combinations(INDICES, r):
        term = MultiPoly.one()
        for i in idx:
            term = term * lam(i)
        out = out + term
    return out


def sigma_without(i: int) -> MultiPoly:
    """Product of the three curvatures other than l_i."""
    out = MultiPoly.one()
    for j in INDICES:
        if j != i:
            out = out * lam(j)
    return out


def _solve_linear(matrix: list[list[RatFunc]], rhs: list[RatFunc]) -> list[RatFunc]:
    n = len(rhs)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            raise ArithmeticError("singular linear system")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def derive_con3() -> dict[DerivTriple, RatFunc]:
    """Solve sum_j l_j^p h(j,j,m) = 0 (p = 0, 1, 2) for h(a,a,m), a = 1..3.

    Returns the 12 reducible triples mapped to multiples of D(m).
    """
    lams = [RatFunc.coerce(lam(j)) for j in (1, 2, 3)]
    l4 = RatFunc.coerce(lam(4))
    matrix = [[x ** p for x in lams] for p in range(3)]
    det = MultiPoly.one()
    for a, b in combinations((1, 2, 3), 2):
        det = det * (lam(b) - lam(a))
    if det.is_zero():
        raise ArithmeticError("Vandermonde determinant vanishes")
    coeffs = _solve_linear(matrix, [-(l4 ** p) for p in range(3)])
    table = {}
    for a, coeff in zip((1, 2, 3), coeffs):
        for m in INDICES:
            table[codazzi_canon(a, a, m)] = coeff * RatFunc.var(Symbol.d(m))
    return table


RawExpr = Union[str, MultiPoly, RatFunc, int]


@dataclass(frozen=True)
class ReductionContext:
    con3_table: dict[DerivTriple, RatFunc] = field(default_factory=derive_con3)
    lambda4_rule: MultiPoly = field(default_factory=lambda: lam(4))
    gauss_table: dict[tuple[int, int], MultiPoly] = field(
        default_factory=lambda: {(i, j): gauss(i, j, i, j) for i, j in combinations(INDICES, 2)}
    )

    def __hash__(self) -> int:
        return id(self)

    def lam(self, i: int) -> RatFunc:
        return RatFunc.coerce(self.lambda4_rule if i == 4 else lam(i))

    def h(self, i: int, j: int, k: int) -> RatFunc:
        t = codazzi_canon(i, j, k)
        if t.kind == REDUCIBLE:
            return self.con3_table[t]
        return RatFunc.var(t.symbol())

    def R(self, i: int, j: int, k: int, l: int) -> RatFunc:
        return RatFunc.coerce(gauss(i, j, k, l))

    def con3_coefficient(self, a: int) -> RatFunc:
        """c with h(a,a,m) = c * h(4,4,m); independent of m."""
        if a == 4:
            return RatFunc.coerce(1)
        return self.con3_table[codazzi_canon(a, a, 1)] / RatFunc.var(Symbol.d(1))

    def namespace(self) -> dict[str, RatFunc]:
        names = {f"l{i}": self.lam(i) for i in INDICES}
        names.update({s.name: RatFunc.var(s) for s in _free_symbols()})
        names.update({f"f{k}": RatFunc.coerce(power_sum(k)) for k in INDICES})
        names.update({f"sigma{r}": RatFunc.coerce(sigma(r)) for r in range(5)})
        return names

    def functions(self) -> dict:
        return {"h": self.h, "R": self.R}

    def reduce(self, x: RawExpr) -> RatFunc:
        """Canonical residue over the 11-symbol alphabet.

        Text input may use l1..l4, f1..f4, sigma0..sigma4, h(i,j,k),
        R(i,j,k,l) and the free symbols D1..D4, T123...; every atom is
        Codazzi-sorted, then con3- and l4-substituted, and the result is
        normalized.  Kernel objects are already reduced and are returned
        in canonical form.
        """
        if isinstance(x, str):
            return evaluate_expression(
                x, self.namespace(), self.functions(), number=RatFunc.coerce
            )
        return RatFunc.coerce(x)


def _free_symbols():
    from .symkernel import DERIVATIVE_SYMBOLS, LAMBDA_SYMBOLS

    return LAMBDA_SYMBOLS + DERIVATIVE_SYMBOLS


@lru_cache(maxsize=1)
def default_context() -> ReductionContext:
    return ReductionContext()

