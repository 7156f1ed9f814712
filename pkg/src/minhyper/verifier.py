"""Identity checks for the principal-frame computation of dPhi.

Every symbolic check reduces ``computed - expected`` to canonical form and
passes only on the zero rational function.  Expected values come from the
transcribed closed forms in ``data/fixtures.ini``; computed values come
from the exterior-algebra engine in :mod:`minhyper.coframe`.
"""
from __future__ import annotations

import configparser
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Callable

from .coframe import (
    DForm,
    connection_form,
    d_form,
    expand_connection,
    omega,
    wedge_all,
)
from .hypersurface import (
    INDICES,
    ReductionContext,
    default_context,
    lam,
    power_sum,
    sigma_without,
)
from .symkernel import (
    T_SYMBOLS,
    MultiPoly,
    RatFunc,
    Symbol,
    evaluate_expression,
    poly_to_latex,
)

PAIRS = tuple(combinations(INDICES, 2))

# theta_ij = w_a ^ w_b ^ w_ij; factor order fixes the signs of X_ij
THETA_COFRAMES = {
    (1, 2): (3, 4),
    (1, 3): (4, 2),
    (1, 4): (2, 3),
    (2, 3): (1, 4),
    (2, 4): (3, 1),
    (3, 4): (1, 2),
}

PASS = "pass"
FAIL = "fail"


@dataclass
class CheckResult:
    name: str
    status: str
    residual: str = ""
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "residual": self.residual,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass
class SOSCertificate:
    """target == sum(coeff * base**2), with positive rational coefficients."""

    target: MultiPoly
    squares: list[tuple[Fraction, MultiPoly]] = field(default_factory=list)

    def remainder(self) -> MultiPoly:
        out = self.target
        for coeff, base in self.squares:
            out = out - base * base * coeff
        return out

    def is_valid(self) -> bool:
        return all(c > 0 for c, _ in self.squares) and self.remainder().is_zero()


# -- fixtures -------------------------------------------------------------


@lru_cache(maxsize=1)
def fixtures() -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#",))
    parser.optionxform = str
    text = resources.files("minhyper").joinpath("data/fixtures.ini").read_text("utf-8")
    parser.read_string(text)
    return parser


def fixture_text(section: str, key: str) -> str:
    return " ".join(fixtures()[section][key].split())


def _cubic_text(i: int, side: str) -> str:
    others = "*".join(f"l{j}" for j in INDICES if j != i)
    return fixture_text("traces", side).replace("{i}", str(i)).replace("{others}", others)


def _c_text(i: int) -> str:
    return fixture_text("dphi", "c").replace("{i}", str(i))


def fixture_X(i: int, j: int, ctx: ReductionContext | None = None) -> RatFunc:
    return (ctx or default_context()).reduce(fixture_text("X", f"{i}{j}"))


def c_coefficient(i: int, ctx: ReductionContext | None = None) -> RatFunc:
    return (ctx or default_context()).reduce(_c_text(i))


def dphi_rhs(ctx: ReductionContext | None = None) -> RatFunc:
    ctx = ctx or default_context()
    names = ctx.namespace()
    names.update({f"c{i}": c_coefficient(i, ctx) for i in INDICES})
    return evaluate_expression(
        fixture_text("dphi", "rhs"), names, ctx.functions(), number=RatFunc.coerce
    )


# -- engine side ----------------------------------------------------------


def theta(i: int, j: int) -> DForm:
    a, b = THETA_COFRAMES[(i, j)]
    return wedge_all(omega(a), omega(b), connection_form(i, j))


def phi(ctx: ReductionContext | None = None) -> DForm:
    ctx = ctx or default_context()
    out = DForm(3)
    for i, j in PAIRS:
        out = out + theta(i, j).scale(ctx.lam(i) + ctx.lam(j))
    return out


@lru_cache(maxsize=None)
def _compute_X(i: int, j: int, ctx: ReductionContext) -> RatFunc:
    return expand_connection(d_form(theta(i, j), ctx), ctx).volume_coefficient()


def compute_X(i: int, j: int, ctx: ReductionContext | None = None) -> RatFunc:
    """Volume coefficient of d(theta_ij), computed from the structure equations."""
    if (i, j) not in THETA_COFRAMES:
        raise ValueError("compute_X needs 1 <= i < j <= 4")
    return _compute_X(i, j, ctx or default_context())


@lru_cache(maxsize=None)
def _dphi_volume(ctx: ReductionContext) -> RatFunc:
    return expand_connection(d_form(phi(ctx), ctx), ctx).volume_coefficient()


def dphi_volume(ctx: ReductionContext | None = None) -> RatFunc:
    """Volume coefficient of dPhi, computed from scratch by the Leibniz rule."""
    return _dphi_volume(ctx or default_context())


# -- comparison helpers ---------------------------------------------------


def _compare(computed: RatFunc, expected: RatFunc) -> str:
    """'' on equality, else the canonical residual (with a sign-flip note)."""
    residual = computed - expected
    if residual.is_zero():
        return ""
    if not expected.is_zero() and (computed + expected).is_zero():
        return f"sign-flip: computed == -expected; residual {residual}"
    return str(residual)


def _timed(name: str, body: Callable[[], str]) -> CheckResult:
    start = time.perf_counter()
    residual = body()
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return CheckResult(name, PASS if not residual else FAIL, residual, elapsed)


# -- suites ---------------------------------------------------------------


def check_con3(ctx: ReductionContext | None = None) -> list[CheckResult]:
    ctx = ctx or default_context()

    def body() -> str:
        problems = []
        for a in (1, 2, 3):
            closed = ctx.reduce(fixture_text("con3", f"h{a}{a}"))
            for m in INDICES:
                entry = ctx.h(a, a, m)
                diff = _compare(entry, closed * RatFunc.var(Symbol.d(m)))
                if diff:
                    problems.append(f"h{a}{a},{m}: {diff}")
        trace_row = sum((ctx.con3_coefficient(b) for b in (1, 2, 3)), RatFunc.coerce(1))
        if not trace_row.is_zero():
            problems.append(f"trace row: {trace_row}")
        return "; ".join(problems)

    return [_timed("con3", body)]


def check_partial_fractions(ctx: ReductionContext | None = None) -> list[CheckResult]:
    ctx = ctx or default_context()
    out = []
    for k in ("1", "2", "3", "4"):
        out.append(
            _timed(
                f"partial_fractions.{k}",
                lambda k=k: _compare(ctx.reduce(fixture_text("partial_fractions", k)), RatFunc.coerce(0)),
            )
        )
    return out


def check_traces(ctx: ReductionContext | None = None) -> list[CheckResult]:
    ctx = ctx or default_context()

    def trace() -> str:
        return _compare(
            ctx.reduce(fixture_text("traces", "trace")),
            ctx.reduce(fixture_text("traces", "trace_rhs")),
        )

    def cubic() -> str:
        parts = []
        for i in INDICES:
            lhs = ctx.reduce(_cubic_text(i, "cubic"))
            engine_lhs = RatFunc.coerce(lam(i) ** 3 + sigma_without(i)) - RatFunc.coerce(
                lam(i) * power_sum(2)
            ) * Fraction(1, 2)
            rhs = ctx.reduce(_cubic_text(i, "cubic_rhs"))
            for label, value in (("fixture", lhs), ("engine", engine_lhs)):
                diff = _compare(value, rhs)
                if diff:
                    parts.append(f"i={i} ({label}): {diff}")
        return "; ".join(parts)

    return [_timed("traces.trace", trace), _timed("traces.cubic", cubic)]


def check_X(ctx: ReductionContext | None = None) -> list[CheckResult]:
    ctx = ctx or default_context()
    return [
        _timed(f"x.{i}{j}", lambda i=i, j=j: _compare(compute_X(i, j, ctx), fixture_X(i, j, ctx)))
        for i, j in PAIRS
    ]


def _dphi_variant_note(lhs: RatFunc, ctx: ReductionContext) -> str:
    """Diagnostic: does a denominator symmetric in all four curvatures fit?"""
    names = ctx.namespace()
    for i in INDICES:
        others = [j for j in INDICES if j != i]
        den = "*".join(f"(l{a} - l{b})^2" for a, b in combinations(others, 2))
        names[f"c{i}"] = ctx.reduce(f"2*(3*f2 - 4*l{i}^2)/(3*{den})")
    alt = evaluate_expression(
        fixture_text("dphi", "rhs"), names, ctx.functions(), number=RatFunc.coerce
    )
    verdict = "vanishes" if (lhs - alt).is_zero() else "does not vanish"
    return f"; with c_i denominators taken over the other three curvatures the residual {verdict}"


def check_dphi(ctx: ReductionContext | None = None) -> list[CheckResult]:
    ctx = ctx or default_context()

    def body() -> str:
        lhs = dphi_volume(ctx)
        leftover_t = lhs.symbols() & frozenset(T_SYMBOLS)
        diff = _compare(lhs, dphi_rhs(ctx))
        if leftover_t:
            names = ", ".join(sorted(s.name for s in leftover_t))
            diff = f"uncancelled {names}; " + (diff or "0")
        if diff:
            diff += _dphi_variant_note(lhs, ctx)
        return diff

    return [_timed("dphi", body)]


def sos_nonnegativity(i: int) -> SOSCertificate:
    """3 f2 - 4 l_i^2 as the sum of (l_a - l_b)^2 over pairs a < b avoiding i."""
    if i not in INDICES:
        raise ValueError("sos_nonnegativity index must be in 1..4")
    target = power_sum(2) * 3 - lam(i) ** 2 * 4
    others = [j for j in INDICES if j != i]
    squares = [(Fraction(1), lam(a) - lam(b)) for a, b in combinations(others, 2)]
    return SOSCertificate(target, squares)


def check_sos() -> list[CheckResult]:
    def body(i: int) -> str:
        cert = sos_nonnegativity(i)
        rem = cert.remainder()
        return "" if cert.is_valid() else str(rem or "non-positive square coefficient")

    return [_timed(f"sos.{i}", lambda i=i: body(i)) for i in INDICES]


def check_newton(ctx: ReductionContext | None = None) -> list[CheckResult]:
    ctx = ctx or default_context()
    out = []
    for k in (2, 3, 4):
        out.append(
            _timed(
                f"newton.f{k}",
                lambda k=k: _compare(
                    RatFunc.coerce(power_sum(k)), ctx.reduce(fixture_text("newton", f"f{k}"))
                ),
            )
        )
    if not power_sum(1).is_zero():
        out.append(CheckResult("newton.f1", FAIL, str(power_sum(1))))
    return out


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "con3": check_con3,
    "partial_fractions": check_partial_fractions,
    "traces": check_traces,
    "x": check_X,
    "dphi": check_dphi,
    "sos": check_sos,
    "newton": check_newton,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = [r for suite in SUITES.values() for r in suite()]
    elif name in SUITES:
        results = SUITES[name]()
    else:
        raise KeyError(f"unknown suite {name!r}")
    return sorted(results, key=lambda r: r.name)


# -- numeric oracle -------------------------------------------------------


def _rand_rational(rng: random.Random, bound: int = 100) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def sample_point(rng: random.Random) -> dict[str, Fraction]:
    """Random rational point: distinct l1..l4 with zero trace, free symbols."""
    while True:
        ls = [_rand_rational(rng) for _ in range(3)]
        ls.append(-sum(ls))
        if len(set(ls)) == 4:
            break
    point = {f"l{i}": v for i, v in zip(INDICES, ls)}
    for m in INDICES:
        point[f"D{m}"] = _rand_rational(rng)
    for t in combinations(INDICES, 3):
        point["T" + "".join(map(str, t))] = _rand_rational(rng)
    return point


class NumericFrame:
    """The principal-frame quantities at one point, as plain Fractions.

    Shares nothing with the symbolic engine: h(a,a,m) comes from solving the
    3x3 constancy system numerically, forms are coefficient vectors and a
    wedge of four 1-forms is a 4x4 determinant.
    """

    def __init__(self, point: dict[str, Fraction]):
        self.l = {i: point[f"l{i}"] for i in INDICES}
        self.point = point
        ls = [self.l[j] for j in (1, 2, 3)]
        rows = [[x ** p for x in ls] + [-(self.l[4] ** p)] for p in range(3)]
        self.con3 = dict(zip((1, 2, 3), _gauss_solve(rows)))
        self._conn: dict[tuple[int, int], list[Fraction]] = {}
        self._X: dict[tuple[int, int], Fraction] = {}

    def h(self, i: int, j: int, k: int) -> Fraction:
        t = tuple(sorted((i, j, k)))
        if len(set(t)) == 3:
            return self.point["T" + "".join(map(str, t))]
        a = t[1]
        m = t[2] if t[0] == t[1] else t[0]
        base = self.point[f"D{m}"]
        return base if a == 4 else self.con3[a] * base

    def R(self, i: int, j: int, k: int, l: int) -> Fraction:
        delta = (i == k and j == l) - (i == l and j == k)
        return (1 + self.l[i] * self.l[j]) * delta if i != j else Fraction(0)

    def f(self, k: int) -> Fraction:
        return sum(v ** k for v in self.l.values())

    def coframe(self, m: int) -> list[Fraction]:
        return [Fraction(int(n == m)) for n in INDICES]

    def connection(self, i: int, j: int) -> list[Fraction]:
        if i == j:
            return [Fraction(0)] * 4
        if (i, j) not in self._conn:
            self._conn[(i, j)] = [self.h(i, j, m) / (self.l[i] - self.l[j]) for m in INDICES]
        return self._conn[(i, j)]

    def d_coframe(self, i: int) -> list[tuple[Fraction, list, list]]:
        return [(Fraction(1), self.connection(i, j), self.coframe(j)) for j in INDICES if j != i]

    def d_connection(self, i: int, j: int) -> list[tuple[Fraction, list, list]]:
        out = [(Fraction(1), self.connection(i, k), self.connection(k, j)) for k in INDICES if k not in (i, j)]
        out.append((-self.R(i, j, i, j), self.coframe(i), self.coframe(j)))
        return out

    def X(self, i: int, j: int) -> Fraction:
        if (i, j) not in self._X:
            self._X[(i, j)] = self._volume_of_dtheta(i, j)
        return self._X[(i, j)]

    def _volume_of_dtheta(self, i: int, j: int) -> Fraction:
        a, b = THETA_COFRAMES[(i, j)]
        factors = [self.coframe(a), self.coframe(b), self.connection(i, j)]
        derivs = [self.d_coframe(a), self.d_coframe(b), self.d_connection(i, j)]
        total = Fraction(0)
        for r in range(3):
            sign = -1 if r % 2 else 1
            for c, u, v in derivs[r]:
                vecs = factors[:r] + [u, v] + factors[r + 1:]
                total += sign * c * _det4(vecs)
        return total

    def dphi(self) -> Fraction:
        total = Fraction(0)
        for i, j in PAIRS:
            a, b = THETA_COFRAMES[(i, j)]
            dl = [self.h(i, i, m) + self.h(j, j, m) for m in INDICES]
            total += _det4([dl, self.coframe(a), self.coframe(b), self.connection(i, j)])
            total += (self.l[i] + self.l[j]) * self.X(i, j)
        return total

    def namespace(self) -> dict[str, Fraction]:
        names: dict[str, Fraction] = {f"l{i}": v for i, v in self.l.items()}
        names.update({f"f{k}": self.f(k) for k in INDICES})
        return names


def _gauss_solve(rows: list[list[Fraction]]) -> list[Fraction]:
    n = len(rows)
    a = [list(r) for r in rows]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] / a[r][r] for r in range(n)]


def _det4(vecs: list[list[Fraction]]) -> Fraction:
    """Volume coefficient of v1^v2^v3^v4 (vectors in the w1..w4 basis)."""
    a = [list(v) for v in vecs]
    det = Fraction(1)
    for col in range(4):
        piv = next((r for r in range(col, 4) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, 4):
            if a[r][col]:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _fixture_value(text: str, frame: NumericFrame, extra: dict | None = None) -> Fraction:
    names = frame.namespace()
    names.update(extra or {})
    return evaluate_expression(text, names, {"h": frame.h, "R": frame.R})


def numeric_crosscheck(seed: int, trials: int, ctx: ReductionContext | None = None) -> CheckResult:
    """Compare fixtures, engine output and a numeric frame at random points."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ctx = ctx or default_context()
    start = time.perf_counter()
    rng = random.Random(seed)
    engine_X = {p: compute_X(*p, ctx) for p in PAIRS}
    engine_dphi = dphi_volume(ctx)
    x_texts = {p: fixture_text("X", f"{p[0]}{p[1]}") for p in PAIRS}
    c_texts = {i: _c_text(i) for i in INDICES}
    rhs_text = fixture_text("dphi", "rhs")
    failures = []
    for trial in range(trials):
        point = sample_point(rng)
        frame = NumericFrame(point)
        assignment = {k: v for k, v in point.items() if k != "l4"}
        for p in PAIRS:
            values = {
                "fixture": _fixture_value(x_texts[p], frame),
                "engine": engine_X[p].evaluate(assignment),
                "frame": frame.X(*p),
            }
            if len(set(values.values())) != 1:
                failures.append(f"trial {trial} X{p[0]}{p[1]} at {_fmt(point)}: {_fmt(values)}")
        cs = {f"c{i}": _fixture_value(c_texts[i], frame) for i in INDICES}
        values = {
            "rhs": _fixture_value(rhs_text, frame, cs),
            "engine": engine_dphi.evaluate(assignment),
            "frame": frame.dphi(),
        }
        if len(set(values.values())) != 1:
            failures.append(f"trial {trial} dPhi at {_fmt(point)}: {_fmt(values)}")
        if len(failures) >= 5:
            break
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return CheckResult("crosscheck", FAIL if failures else PASS, "; ".join(failures), elapsed)


def _fmt(d: dict) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in d.items()) + "}"


# -- LaTeX audit output ---------------------------------------------------


def _difference_factors() -> list[tuple[str, MultiPoly]]:
    out = []
    for a, b in PAIRS:
        out.append((rf"(\lambda_{a}-\lambda_{b})", lam(a) - lam(b)))
    return out


def _factor_denominator(den: MultiPoly) -> tuple[list[str], MultiPoly]:
    from .symkernel import divexact

    factors = []
    rest = den
    for label, lin in _difference_factors():
        k = 0
        while True:
            q = divexact(rest, lin)
            if q is None:
                break
            rest, k = q, k + 1
        if k:
            factors.append(label + (f"^{{{k}}}" if k > 1 else ""))
    return factors, rest


def ratfunc_to_latex(r: RatFunc) -> str:
    """LaTeX rendering grouped by derivative monomials."""
    from .symkernel import DERIVATIVE_SYMBOLS

    groups = r.num.split(DERIVATIVE_SYMBOLS)
    parts = []
    for outer in sorted(groups, reverse=True):
        coeff = RatFunc(groups[outer], r.den)
        mono = MultiPoly._raw({outer: 1})
        mono_tex = "" if mono == 1 else poly_to_latex(mono)
        factors, rest = _factor_denominator(coeff.den)
        den_tex = "".join(factors)
        if rest != 1:
            den_tex = (f"({poly_to_latex(rest)})" if den_tex else poly_to_latex(rest)) + den_tex
        num_tex = poly_to_latex(coeff.num)
        if den_tex:
            parts.append(rf"\frac{{{num_tex}}}{{{den_tex}}}{mono_tex}")
        else:
            parts.append(f"({num_tex}){mono_tex}" if mono_tex else num_tex)
    return "\n  + ".join(parts) if parts else "0"


def emit_latex(ctx: ReductionContext | None = None) -> str:
    lines = []
    for i, j in PAIRS:
        lines.append(f"X_{{{i}{j}}} = {ratfunc_to_latex(compute_X(i, j, ctx))}")
    return "\n\n".join(lines)
