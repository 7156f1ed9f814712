from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import POINT, l
from strategies import nonzero_polys, polys, random_nonzero_poly, random_poly
from minhyper.hypersurface import lam, power_sum
from minhyper.symkernel import (
    SYMBOLS,
    ExpressionSyntaxError,
    MissingAssignmentError,
    MultiPoly,
    RatFunc,
    RatFuncDivisionByZero,
    Symbol,
    ZeroGcdError,
    divexact,
    parse_ratfunc,
    poly_arith,
    poly_eval,
    poly_gcd,
    poly_to_text,
    ratfunc_arith,
    ratfunc_to_text,
)
from minhyper.symkernel.poly import divides, pack, unpack


# -- symbols ----------------------------------------------------------------


def test_eleven_symbols_in_fixed_order():
    names = [s.name for s in SYMBOLS]
    assert names == [
        "l1", "l2", "l3", "D1", "D2", "D3", "D4", "T123", "T124", "T134", "T234",
    ]
    assert [s.position for s in SYMBOLS] == list(range(11))


def test_lambda4_is_not_a_symbol():
    with pytest.raises(ValueError):
        Symbol.lam(4)
    with pytest.raises(ValueError):
        Symbol.t(1, 1, 2)


def test_symbol_names_round_trip():
    for s in SYMBOLS:
        assert Symbol.from_name(s.name) == s


# -- packed monomials -------------------------------------------------------


def test_pack_unpack_and_divisibility():
    a = (1, 0, 2, 0, 0, 0, 0, 3, 0, 0, 0)
    b = (2, 1, 2, 0, 0, 0, 0, 3, 0, 0, 1)
    assert unpack(pack(a)) == a
    q = divides(pack(a), pack(b))
    assert q is not None and unpack(q) == (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1)
    assert divides(pack(b), pack(a)) is None


def test_exponent_overflow_is_rejected():
    with pytest.raises(OverflowError):
        pack((1 << 15,) + (0,) * 10)
    with pytest.raises(OverflowError):
        MultiPoly.var("l1") ** 20000 * MultiPoly.var("l2") ** 20000


def test_terms_are_graded_lex():
    p = l(1) * l(2) + l(3) ** 3 + l(1) ** 2 + 1 + MultiPoly.var("D1")
    assert poly_to_text(p) == "l3^3 + l1^2 + l1*l2 + D1 + 1"


# -- poly_arith -------------------------------------------------------------


def test_difference_of_squares():
    assert poly_arith(l(1) + l(2), l(1) - l(2), "mul") == l(1) ** 2 - l(2) ** 2


def test_additive_identity():
    p = l(1) * 3 - MultiPoly.var("T123")
    assert poly_arith(p, MultiPoly.zero(), "add") == p


def test_square_of_sum_minus_squares():
    s = l(1) + l(2) + l(3)
    got = poly_arith(s ** 2, l(1) ** 2 + l(2) ** 2 + l(3) ** 2, "sub")
    assert got == 2 * l(1) * l(2) + 2 * l(1) * l(3) + 2 * l(2) * l(3)


def test_no_zero_coefficients_stored():
    p = l(1) + l(2) - l(1)
    assert list(p.packed_terms.values()) == [1]
    assert (p - p).is_zero() and len(p - p) == 0


def test_unknown_operation():
    with pytest.raises(ValueError):
        poly_arith(l(1), l(2), "pow")


def test_fraction_coefficients():
    p = l(1) * Fraction(1, 2) + Fraction(1, 3)
    assert p * 6 == 3 * l(1) + 2
    assert poly_to_text(p) == "1/2*l1 + 1/3"


# -- gcd --------------------------------------------------------------------


def test_gcd_common_factor():
    assert poly_gcd(l(1) ** 2 - l(2) ** 2, l(1) - l(2)) == l(1) - l(2)


def test_gcd_with_unit():
    assert poly_gcd(l(1) ** 3 + 7, MultiPoly.one()) == 1


def test_gcd_of_repeated_differences():
    a = (l(1) - l(2)) ** 2 * (l(2) - l(3))
    b = (l(1) - l(2)) * (l(2) - l(3)) ** 2
    g = poly_gcd(a, b)
    assert g == (l(1) - l(2)) * (l(2) - l(3))
    assert divexact(a, g) is not None and divexact(b, g) is not None


def test_gcd_both_zero_rejected():
    with pytest.raises(ZeroGcdError):
        poly_gcd(MultiPoly.zero(), MultiPoly.zero())


def test_gcd_with_zero_is_normalized_other():
    assert poly_gcd(MultiPoly.zero(), -2 * l(1) - 4) == l(1) + 2


def test_gcd_positive_leading_coefficient():
    g = poly_gcd(-(l(1) - l(3)) * l(2), -(l(1) - l(3)) * l(1))
    assert g.leading_coeff() > 0 and g == l(1) - l(3)


def _to_sympy(p: MultiPoly):
    syms = sympy.symbols([s.name for s in SYMBOLS])
    return sum(
        (sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c)
        * sympy.Mul(*[x ** e for x, e in zip(syms, exps)])
        for exps, c in p.terms()
    ), syms


@pytest.mark.parametrize("seed", range(25))
def test_gcd_matches_sympy(seed):
    rng = random.Random(seed)
    c = random_nonzero_poly(rng, nterms=3)
    a = random_nonzero_poly(rng, nterms=3) * c
    b = random_nonzero_poly(rng, nterms=3) * c
    g = poly_gcd(a, b)
    ea, syms = _to_sympy(a)
    eb, _ = _to_sympy(b)
    ref = sympy.Poly(sympy.gcd(ea, eb), *syms)
    ours = sympy.Poly(_to_sympy(g)[0], *syms)
    # equal up to a rational unit
    assert sympy.simplify(ours.as_expr() * ref.LC() - ref.as_expr() * ours.LC()) == 0


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=150, deadline=None)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    assert divexact(a, g) is not None
    assert divexact(b, g) is not None


# -- ring axioms ------------------------------------------------------------


@given(polys, polys, polys)
@settings(max_examples=150, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero()


@given(polys, polys, st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 50))
@settings(max_examples=150, deadline=None)
def test_eval_is_homomorphism(a, b, x, y, z):
    asg = {s: Fraction(x + i, z) for i, s in enumerate(SYMBOLS)}
    asg[SYMBOLS[1]] = Fraction(y, z)
    assert poly_eval(a * b, asg) == poly_eval(a, asg) * poly_eval(b, asg)
    assert poly_eval(a + b, asg) == poly_eval(a, asg) + poly_eval(b, asg)


# -- ratfunc ----------------------------------------------------------------


def test_cancellation():
    r = RatFunc(l(1) ** 2 - l(2) ** 2, l(1) - l(2))
    assert r.is_polynomial() and r.num == l(1) + l(2)


def test_self_division_is_one():
    a = RatFunc(l(1) + 3 * l(3), l(2) ** 2 + 1)
    assert ratfunc_arith(a, a, "div") == 1


def test_antisymmetric_sum_vanishes():
    a = RatFunc(MultiPoly.one(), l(1) - l(2))
    b = RatFunc(MultiPoly.one(), l(2) - l(1))
    assert ratfunc_arith(a, b, "add").is_zero()


def test_division_by_zero_is_distinct_error():
    with pytest.raises(RatFuncDivisionByZero):
        ratfunc_arith(RatFunc.coerce(l(1)), RatFunc.coerce(0), "div")
    with pytest.raises(RatFuncDivisionByZero):
        RatFunc(l(1), MultiPoly.zero())
    assert issubclass(RatFuncDivisionByZero, ZeroDivisionError)


def test_canonical_form_invariants():
    r = RatFunc(2 * l(1) - 2 * l(2), Fraction(-4, 3) * (l(1) - l(2)) * l(3))
    assert r.den.leading_coeff() > 0
    assert all(isinstance(c, int) for c in r.num.coefficients() + r.den.coefficients())
    assert r == RatFunc(MultiPoly.const(-3), 2 * l(3))
    assert str(r) == "(-3)/(2*l3)"


def test_canonical_form_is_route_independent():
    x = RatFunc(l(1), l(2) - l(3))
    y = RatFunc(l(2), l(1) - l(3))
    route1 = x + y
    route2 = (x * (l(1) - l(3)) * (l(2) - l(3)) + y * (l(1) - l(3)) * (l(2) - l(3))) / (
        (l(1) - l(3)) * (l(2) - l(3))
    )
    assert route1.num == route2.num and route1.den == route2.den


def test_ratfunc_diff_quotient_rule():
    r = RatFunc(l(1), l(1) - l(2))
    d = r.diff(Symbol.lam(1))
    assert d == RatFunc(-l(2), (l(1) - l(2)) ** 2)


def test_negative_power():
    r = RatFunc.coerce(l(1) - l(2))
    assert r ** -2 == RatFunc(MultiPoly.one(), (l(1) - l(2)) ** 2)


def test_ratfunc_text_round_trip():
    r = RatFunc(2 * l(1) * MultiPoly.var("D1") ** 2 - MultiPoly.var("T123") ** 2, (l(1) - l(2)) ** 2)
    text = ratfunc_to_text(r)
    assert text == "(2*l1*D1^2 - T123^2)/(l1^2 - 2*l1*l2 + l2^2)"
    assert parse_ratfunc(text) == r


def test_parse_rejects_unknown_names_and_syntax():
    with pytest.raises(ExpressionSyntaxError):
        parse_ratfunc("l4 + 1")
    with pytest.raises(ExpressionSyntaxError):
        parse_ratfunc("l1 +")
    with pytest.raises(ExpressionSyntaxError):
        parse_ratfunc("__import__('os')")


# -- poly_eval --------------------------------------------------------------


def test_eval_product():
    assert poly_eval(l(1) * l(2), {Symbol.lam(1): 1, Symbol.lam(2): 2}) == 2


def test_eval_zero():
    assert poly_eval(MultiPoly.zero(), {}) == 0


def test_eval_sos_target_at_sample():
    p = 3 * power_sum(2) - 4 * lam(1) ** 2
    assert poly_eval(p, POINT) == 146


def test_eval_missing_symbol():
    with pytest.raises(MissingAssignmentError):
        poly_eval(l(1) * MultiPoly.var("D2"), {"l1": 1})


def test_ratfunc_eval_at_pole():
    with pytest.raises(ZeroDivisionError):
        RatFunc(MultiPoly.one(), l(1) - l(2)).evaluate({"l1": 1, "l2": 1})


@pytest.mark.parametrize("seed", range(5))
def test_random_polys_evaluate_consistently_with_text(seed):
    rng = random.Random(seed)
    p = random_poly(rng, nterms=6)
    asg = {s.name: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for s in SYMBOLS}
    assert parse_ratfunc(poly_to_text(p)) == RatFunc.coerce(p)
    assert RatFunc.coerce(p).evaluate(asg) == p.evaluate(asg)
