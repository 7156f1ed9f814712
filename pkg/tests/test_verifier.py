from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import POINT, l, rf
from minhyper import verifier
from minhyper.coframe import d_function, wedge
from minhyper.hypersurface import default_context, lam, power_sum, sigma_without
from minhyper.symkernel import DERIVATIVE_SYMBOLS, T_SYMBOLS, RatFunc, Symbol
from minhyper.verifier import (
    FAIL,
    PAIRS,
    PASS,
    CheckResult,
    NumericFrame,
    c_coefficient,
    compute_X,
    dphi_rhs,
    dphi_volume,
    fixture_X,
    numeric_crosscheck,
    run_suite,
    sample_point,
    sos_nonnegativity,
    theta,
)

CTX = default_context()
ZERO_DERIVS = {s.name: 0 for s in DERIVATIVE_SYMBOLS}


def at_point(r: RatFunc, derivs=None) -> Fraction:
    return r.evaluate({**POINT, **(derivs if derivs is not None else ZERO_DERIVS)})


# -- suites -------------------------------------------------------------------


@pytest.mark.parametrize(
    "suite,count",
    [("con3", 1), ("partial_fractions", 4), ("traces", 2), ("x", 6), ("dphi", 1), ("sos", 4), ("newton", 3)],
)
def test_suite_passes(suite, count):
    results = run_suite(suite)
    assert len(results) == count
    assert all(r.status == PASS and r.residual == "" for r in results), results


def test_all_suite_has_21_sorted_checks():
    results = run_suite("all")
    assert len(results) == 21
    names = [r.name for r in results]
    assert names == sorted(names)
    assert all(r.passed for r in results)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_check_result_status_matches_residual():
    for r in run_suite("all"):
        assert (r.status == PASS) == (r.residual == "")
        assert isinstance(r.elapsed_ms, int)


# -- partial fractions and traces ---------------------------------------------


@pytest.mark.parametrize("k", ["1", "2", "3", "4"])
def test_partial_fraction_numeric_spot(k):
    text = verifier.fixture_text("partial_fractions", k)
    assert CTX.reduce(text).evaluate(POINT) == 0


def test_cubic_identity_at_sample():
    lhs = lam(1) ** 3 + sigma_without(1) - lam(1) * power_sum(2) * Fraction(1, 2)
    assert lhs.evaluate(POINT) == -60
    assert (power_sum(3) * Fraction(1, 3)).evaluate(POINT) == -60


# -- X_ij -------------------------------------------------------------------------


@pytest.mark.parametrize("pair", PAIRS)
def test_compute_X_matches_fixture(pair):
    assert compute_X(*pair) == fixture_X(*pair)


@pytest.mark.parametrize("pair", PAIRS)
def test_X_ends_with_minus_R(pair):
    i, j = pair
    # derivative-free part of X_ij is exactly -R_ijij
    free_part = compute_X(i, j).evaluate({**ZERO_DERIVS, **_sym_point()})
    assert free_part == -CTX.R(i, j, i, j).evaluate(_sym_point())


def _sym_point():
    return {"l1": Fraction(3, 7), "l2": Fraction(-5, 2), "l3": Fraction(11, 13)}


def test_compute_X_rejects_bad_pair():
    with pytest.raises(ValueError):
        compute_X(2, 1)


def test_t123_squared_cancels_across_weighted_X():
    total = sum(((CTX.lam(i) + CTX.lam(j)) * compute_X(i, j) for i, j in PAIRS), RatFunc.coerce(0))
    t = Symbol.t(1, 2, 3)
    second = total.diff(t).diff(t)
    assert second.is_zero()
    # but the individual X_ij do carry T123^2
    assert not compute_X(1, 2).diff(t).diff(t).is_zero()


def test_fixture_sum_reproduces_dphi():
    total = RatFunc.coerce(0)
    for i, j in PAIRS:
        c = CTX.lam(i) + CTX.lam(j)
        total = total + c * fixture_X(i, j)
        dl = d_function(c)
        total = total + verifier.expand_connection(wedge(dl, theta(i, j))).volume_coefficient()
    assert total == dphi_volume()


# -- dPhi -------------------------------------------------------------------------


def test_dphi_matches_rhs():
    assert dphi_volume() == dphi_rhs()


def test_dphi_has_no_T_symbols():
    assert not (dphi_volume().symbols() & frozenset(T_SYMBOLS))


def test_dphi_without_derivatives_is_f3():
    assert at_point(dphi_volume()) == power_sum(3).evaluate(POINT) == -180


def test_c1_at_sample():
    assert c_coefficient(1).evaluate(POINT) == Fraction(73, 3)


def test_dphi_variant_diagnostic_runs():
    note = verifier._dphi_variant_note(dphi_volume(), CTX)
    assert "residual" in note


# -- SOS ------------------------------------------------------------------------------


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_sos_certificate_valid(i):
    cert = sos_nonnegativity(i)
    assert cert.is_valid()
    assert all(c > 0 for c, _ in cert.squares)


def test_sos_values_at_sample():
    cert = sos_nonnegativity(1)
    assert cert.target.evaluate(POINT) == 146
    assert [(b * b).evaluate(POINT) for _, b in cert.squares] == [1, 64, 81]


def test_sos_equality_case():
    # l2 = l3 = l4 = -l1/3
    pt = {"l1": Fraction(3), "l2": Fraction(-1), "l3": Fraction(-1)}
    cert = sos_nonnegativity(1)
    assert cert.target.evaluate(pt) == 0
    assert sum(c * (b * b).evaluate(pt) for c, b in cert.squares) == 0


def test_sos_bad_index():
    with pytest.raises(ValueError):
        sos_nonnegativity(5)


# -- sign-flip diagnostic ---------------------------------------------------------------


def test_compare_reports_sign_flip():
    x = rf(l(1) + 2)
    msg = verifier._compare(-x, x)
    assert msg.startswith("sign-flip")
    assert verifier._compare(x, x) == ""
    assert not verifier._compare(x + 1, x).startswith("sign-flip")


def test_failed_check_result():
    r = verifier._timed("demo", lambda: "l1")
    assert r.status == FAIL and not r.passed and r.residual == "l1"


# -- numeric oracle ---------------------------------------------------------------------


def test_crosscheck_seed_42():
    r = numeric_crosscheck(42, 100)
    assert r.status == PASS, r.residual


def test_crosscheck_is_deterministic():
    p1 = sample_point(random.Random(7))
    p2 = sample_point(random.Random(7))
    assert p1 == p2
    a, b = numeric_crosscheck(7, 1), numeric_crosscheck(7, 1)
    assert (a.name, a.status, a.residual) == (b.name, b.status, b.residual)


def test_crosscheck_rejects_zero_trials():
    with pytest.raises(ValueError):
        numeric_crosscheck(0, 0)


class _ScriptedRng:
    """Feeds fixed integers to sample_point, then falls back to a real rng."""

    def __init__(self, ints):
        self.ints = list(ints)
        self.rest = random.Random(0)

    def randint(self, a, b):
        return self.ints.pop(0) if self.ints else self.rest.randint(a, b)


def test_degenerate_sample_is_resampled():
    # first draw: l1 = l2 = 1/1, l3 = 2/1; second draw: 1, 2, 3
    rng = _ScriptedRng([1, 1, 1, 1, 2, 1, 1, 1, 2, 1, 3, 1])
    pt = sample_point(rng)
    assert (pt["l1"], pt["l2"], pt["l3"], pt["l4"]) == (1, 2, 3, -6)


def test_sample_points_have_distinct_curvatures():
    rng = random.Random(1)
    for _ in range(200):
        pt = sample_point(rng)
        ls = [pt[f"l{i}"] for i in (1, 2, 3, 4)]
        assert len(set(ls)) == 4 and sum(ls) == 0


def test_numeric_frame_agrees_with_engine_at_sample():
    pt = sample_point(random.Random(3))
    frame = NumericFrame(pt)
    asg = {k: v for k, v in pt.items() if k != "l4"}
    for pair in PAIRS:
        assert frame.X(*pair) == compute_X(*pair).evaluate(asg)
    assert frame.dphi() == dphi_volume().evaluate(asg)


def test_crosscheck_reports_sample_on_failure(monkeypatch):
    real = verifier.fixture_text

    def tampered(section, key):
        text = real(section, key)
        return text + " + 1" if (section, key) == ("X", "12") else text

    monkeypatch.setattr(verifier, "fixture_text", tampered)
    r = numeric_crosscheck(5, 3)
    assert r.status == FAIL
    assert "X12" in r.residual and "fixture" in r.residual and "l1" in r.residual


# -- LaTeX audit output ------------------------------------------------------------------


def test_emit_latex_lists_six_X():
    tex = verifier.emit_latex()
    for i, j in PAIRS:
        assert f"X_{{{i}{j}}} = " in tex
    assert r"h_{44,1}" in tex and r"\frac" in tex


def test_check_result_to_dict():
    r = CheckResult("x.12", PASS, "", 3)
    assert r.to_dict() == {"name": "x.12", "status": "pass", "residual": "", "elapsed_ms": 3}
