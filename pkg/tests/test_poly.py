from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from pvitau.errors import NonExactDivision
from pvitau.poly import (ONE, Poly, content_primitive, discriminant, divides, divmod_poly, evaluate,
                         exact_div, format_poly, gcd, prs_gcd, resultant, sylvester_resultant)

ints = st.lists(st.integers(-50, 50), min_size=0, max_size=8)
rats = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12), min_size=0, max_size=7)
big = st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=20, max_size=70)

x = sympy.Symbol("x")


def to_sympy(P: Poly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(P.coeffs)] or [0], x)


def test_zero_and_degree():
    assert Poly().degree == -1
    assert Poly([0, 0]).is_zero
    assert Poly([1, 2, 0]).degree == 1


def test_format():
    assert format_poly(Poly([1, -5, 5])) == "5*t^2 - 5*t + 1"
    assert str(Poly()) == "0"
    assert str(Poly([Fraction(-1, 2), 1])) == "t - 1/2"


def test_normal_form_keeps_common_denominator():
    P = Poly([Fraction(1, 2), Fraction(1, 3)])
    assert P.denominator == 6
    assert P.numerators == (3, 2)


@given(rats, rats, rats)
def test_ring_axioms(a, b, c):
    A, B, C = Poly(a), Poly(b), Poly(c)
    assert A * (B + C) == A * B + A * C
    assert (A * B) * C == A * (B * C)
    assert A - A == Poly()


@given(big, big)
def test_karatsuba_matches_sympy(a, b):
    A, B = Poly(a), Poly(b)
    assert to_sympy(A * B) == to_sympy(A) * to_sympy(B)


@given(rats, rats)
def test_divmod_reconstructs(a, b):
    A, B = Poly(a), Poly(b)
    if B.is_zero:
        return
    q, r = divmod_poly(A, B)
    assert q * B + r == A
    assert r.degree < B.degree


@given(ints, ints)
def test_exact_division_round_trip(a, b):
    A, B = Poly(a), Poly(b)
    if B.is_zero:
        return
    assert exact_div(A * B, B) == A
    assert divides(B, A * B)


def test_non_exact_division_keeps_remainder():
    with pytest.raises(NonExactDivision) as info:
        exact_div(Poly([1, 0, 1]), Poly([-1, 1]))
    assert info.value.remainder == Poly([2])


@given(ints, ints, ints)
def test_gcd_two_routes(a, b, c):
    A, B, C = Poly(a), Poly(b), Poly(c)
    g1 = gcd(A * C, B * C)
    assert g1 == prs_gcd(A * C, B * C)
    if not g1.is_zero:
        assert g1.lc == 1
        expected = sympy.gcd(to_sympy(A * C), to_sympy(B * C)).monic()
        assert to_sympy(g1).all_coeffs() == expected.all_coeffs()


def test_gcd_trivial_and_zero():
    t = Poly.t()
    assert gcd(t, t - 1) == ONE
    assert gcd(Poly(), Poly()) == Poly()
    assert gcd(Poly(), 2 * t - 4) == t - 2


@given(ints, ints)
def test_resultant_against_sylvester(a, b):
    A, B = Poly(a), Poly(b)
    if A.degree < 1 or B.degree < 1:
        return
    assert resultant(A, B) == sylvester_resultant(A, B)


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=7))
def test_discriminant_against_sympy(a):
    A = Poly(a)
    if A.degree < 1:
        return
    assert discriminant(A) == Fraction(str(sympy.discriminant(to_sympy(A))))


def test_discriminant_of_roots():
    P = Poly.from_roots([1, 2, 5])
    # product of squared root differences
    assert discriminant(P) == (1 * 4 * 3) ** 2


def test_content_primitive_sign():
    c, P = content_primitive(Poly([12, -6]))
    assert c == 6 and P == Poly([2, -1])


@given(rats, st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_evaluate_matches_sympy(a, v):
    A = Poly(a)
    assert evaluate(A, v) == Fraction(str(to_sympy(A).eval(sympy.Rational(v.numerator, v.denominator))))


def test_derivative_and_compose():
    t = Poly.t()
    P = t ** 3 - 2 * t + 1
    assert P.derivative() == 3 * t ** 2 - 2
    assert P.derivative(3) == Poly([6])
    assert P.compose(t + 1) == (t + 1) ** 3 - 2 * (t + 1) + 1
