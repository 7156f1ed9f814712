"""Acceptance gate: one test per criterion, each printing a single pass/fail line."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from strategies import random_form, random_nonzero_poly, random_poly, random_ratfunc
from minhyper.coframe import d_form, wedge
from minhyper.hypersurface import default_context
from minhyper.models import (
    PrincipalCurvatures,
    invariants,
    minimal_isoparametric,
    solve_curvatures,
)
from minhyper.symkernel import RatFunc, parse_ratfunc, ratfunc_to_text
from minhyper.verifier import c_coefficient, numeric_crosscheck, run_suite

N_PROPERTY = 1000
CTX = default_context()


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {n}. {title}: {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)


def timed_suites(*names):
    start = time.perf_counter()
    results = {n: run_suite(n) for n in names}
    return results, time.perf_counter() - start


def tally(results) -> str:
    return f"{sum(r.passed for r in results)}/{len(results)}"


def test_1_dphi_identity():
    res, secs = timed_suites("dphi")
    (r,) = res["dphi"]
    ok = r.passed and r.residual == "" and secs < 60
    record(1, "dPhi identity exact", ok, f"residual={r.residual or '0'}, {secs:.2f}s (<60s)")
    assert ok, r.residual


def test_2_six_X():
    res, secs = timed_suites("x")
    ok = len(res["x"]) == 6 and all(r.passed for r in res["x"]) and secs < 30
    record(2, "X_ij vs fixtures", ok, f"{tally(res['x'])}, {secs:.2f}s (<30s)")
    assert ok


def test_3_identities():
    expected = {"partial_fractions": 4, "traces": 2, "con3": 1, "newton": 3}
    res, secs = timed_suites(*expected)
    ok = secs < 5 and all(
        len(res[n]) == k and all(r.passed for r in res[n]) for n, k in expected.items()
    )
    detail = ", ".join(f"{n} {tally(res[n])}" for n in expected)
    record(3, "identities", ok, f"{detail}, {secs:.2f}s (<5s)")
    assert ok


def test_4_sos_and_c_nonnegative():
    sos = run_suite("sos")
    rng = random.Random(2024)
    cs = [c_coefficient(i) for i in (1, 2, 3, 4)]
    violations = samples = 0
    while samples < 1000:
        pt = {f"l{k}": Fraction(rng.randint(-10**6, 10**6), 10**5) for k in (1, 2, 3)}
        l4 = -sum(pt.values())
        if len({*pt.values(), l4}) < 4:
            continue
        samples += 1
        violations += sum(c.evaluate(pt) < 0 for c in cs)
    ok = len(sos) == 4 and all(r.passed for r in sos) and violations == 0
    record(4, "SOS certificates", ok, f"{tally(sos)}, c_i>=0 at {samples} points, {violations} violations")
    assert ok


def test_5_model_values():
    cases = [(1, (4,), 0), (2, (2, 2), 4), (2, (1, 3), 4), (4, (1, 1, 1, 1), 12)]
    got = []
    for g, pattern, want in cases:
        inv = invariants(minimal_isoparametric(g, pattern))
        got.append((g, pattern, inv.S, inv.H3))
    ok = all(S == want for (_, _, S, _), (*_, want) in zip(got, cases)) and got[-1][3] == 0
    detail = ", ".join(f"g={g} {''.join(map(str, p))}: S={S}" for g, p, S, _ in got)
    record(5, "model values", ok, f"{detail}; H3(g=4)={got[-1][3]}")
    assert ok


def _spread_values(rng, n, gap=1e-3):
    while True:
        vals = [rng.uniform(-5, 5) for _ in range(n)]
        if all(abs(a - b) > gap for i, a in enumerate(vals) for b in vals[i + 1:]):
            return vals


ALL_PATTERNS = [(4,), (1, 3), (3, 1), (2, 2), (1, 1, 2), (1, 2, 1), (2, 1, 1)]


def test_6_solver_round_trip():
    rng = random.Random(6)
    failures = total = 0
    worst = 0.0
    for pattern in ALL_PATTERNS:
        for _ in range(30):
            vals = _spread_values(rng, len(pattern))
            pc = PrincipalCurvatures.from_values([v for m, v in zip(pattern, vals) for _ in range(m)])
            inv = invariants(pc)
            sols = solve_curvatures(pattern, inv.f1, inv.f2, inv.f3)
            total += 1
            if not any(s.isclose(pc, tol=1e-9) for s in sols):
                failures += 1
                continue
            best = min(max(abs(float(a) - float(b)) for a, b in zip(s.values, pc.values)) for s in sols)
            worst = max(worst, best)
    ok = failures == 0
    record(6, "solver round-trip", ok, f"{total - failures}/{total} recovered, max err {worst:.1e} (<=1e-9)")
    assert ok


def test_7_crosscheck():
    start = time.perf_counter()
    r = numeric_crosscheck(42, 100)
    secs = time.perf_counter() - start
    ok = r.passed and secs < 10
    record(7, "oracle crosscheck seed 42 x100", ok, f"{r.status}, {secs:.2f}s (<10s)")
    assert ok, r.residual


# -- property suites ------------------------------------------------------------------


def _ring_laws(rng):
    a, b, c = (random_poly(rng) for _ in range(3))
    return (
        (a + b) + c == a + (b + c)
        and a + b == b + a
        and (a * b) * c == a * (b * c)
        and a * b == b * a
        and a * (b + c) == a * b + a * c
        and (a - a).is_zero()
    )


def _reduce_idempotent(rng):
    once = CTX.reduce(random_ratfunc(rng))
    return CTX.reduce(once) == once


def _leibniz(rng):
    da = rng.randint(0, 2)
    db = rng.randint(0, 3 - da)
    a, b = random_form(rng, da), random_form(rng, db)
    sign = -1 if da % 2 else 1
    return d_form(wedge(a, b)) == wedge(d_form(a), b) + wedge(a, d_form(b)).scale(sign)


def _canonical(rng):
    a, b, c = random_poly(rng), random_nonzero_poly(rng), random_nonzero_poly(rng)
    k = Fraction(rng.choice([-3, -1, 2, 5]), rng.randint(1, 4))
    r = RatFunc(a, b)
    s = RatFunc(a * c * k, b * c * k)
    t = parse_ratfunc(ratfunc_to_text(r))
    return (r.num, r.den) == (s.num, s.den) == (t.num, t.den) and r.den.leading_coeff() > 0


PROPERTIES = {
    "algebra laws": _ring_laws,
    "reduce idempotence": _reduce_idempotent,
    "Leibniz rule": _leibniz,
    "canonical-form uniqueness": _canonical,
}


def test_8_property_suites():
    counts = {}
    for i, (name, prop) in enumerate(PROPERTIES.items()):
        rng = random.Random(8000 + i)
        counts[name] = sum(bool(prop(rng)) for _ in range(N_PROPERTY))
    ok = all(v == N_PROPERTY for v in counts.values())
    record(8, "property suites", ok, ", ".join(f"{k} {v}/{N_PROPERTY}" for k, v in counts.items()))
    assert ok
