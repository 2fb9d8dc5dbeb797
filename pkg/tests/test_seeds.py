from fractions import Fraction

import pytest
import sympy

from pvitau.errors import ParameterPole
from pvitau.poly import Poly
from pvitau.seeds import (OkamotoParams, PviParams, SeedParams, chart_okamoto, chart_sigma_shift,
                          chart_sigma_unshift, hypergeom_z, hypergeometric_ode_residual, lemma1_residual,
                          pvi_params_at, pvi_params_from_okamoto, seed_q, v_poly, w_poly)

t = Poly.t()
x = sympy.Symbol("x")


def sympy_w(r, m, s):
    r, s = sympy.Rational(r), sympy.Rational(s)
    return sympy.expand(sum((-1) ** j * sympy.binomial(r + m + 1 - j, m - j) * sympy.binomial(s + m, j)
                            * x ** (m - j) for j in range(m + 1)))


def as_poly(expr):
    coeffs = sympy.Poly(expr, x).all_coeffs()[::-1]
    return Poly([Fraction(str(c)) for c in coeffs])


def test_golden_seeds():
    assert w_poly(3, 2, 1) * Fraction(1, 3) == 5 * t ** 2 - 5 * t + 1
    assert w_poly(2, 3, 0) == (2 * t - 1) * (10 * t ** 2 - 10 * t + 1)
    assert w_poly(4, 3, 1) * Fraction(1, 4) == (2 * t - 1) * (7 * t ** 2 - 7 * t + 1)
    assert w_poly(5, 4, 1) * Fraction(1, 5) == 42 * t ** 4 - 84 * t ** 3 + 56 * t ** 2 - 14 * t + 1


@pytest.mark.parametrize("r,m,s", [(3, 2, 1), (Fraction(7, 3), 3, Fraction(-1, 2)), (0, 0, 0), (-2, 4, 5)])
def test_w_matches_sympy_binomials(r, m, s):
    assert w_poly(r, m, s) == as_poly(sympy_w(r, m, s))


@pytest.mark.parametrize("r,m,s", [(3, 2, 1), (4, 3, 1), (Fraction(1, 2), 3, Fraction(5, 3))])
def test_hypergeometric_polynomial_matches_sympy(r, m, s):
    h = sympy.hyperexpand(sympy.hyper([sympy.Rational(r), -m], [sympy.Rational(s)], x))
    assert hypergeom_z(SeedParams(r, m, s)) == as_poly(sympy.expand(h))


def test_hypergeometric_ode_readings():
    for p in [SeedParams(3, 2, 1), SeedParams(Fraction(2, 3), 4, Fraction(7, 2))]:
        assert hypergeometric_ode_residual(p, "printed").is_zero
        assert not hypergeometric_ode_residual(p, "flipped").is_zero


def test_hypergeometric_pole():
    with pytest.raises(ParameterPole):
        hypergeom_z(SeedParams(3, 2, 0))


def test_lemma1_identity():
    for p in [SeedParams(3, 2, 1), SeedParams(4, 3, 1), SeedParams(Fraction(5, 2), 3, Fraction(1, 3))]:
        assert lemma1_residual(p).is_zero


def test_charts():
    assert chart_okamoto(SeedParams(3, 2, 1)) == OkamotoParams(3, 0, 2, -1)
    assert chart_okamoto(SeedParams(1, 1, 1)) == OkamotoParams(Fraction(3, 2), Fraction(1, 2),
                                                               Fraction(1, 2), Fraction(-1, 2))
    p = SeedParams(3, 2, 1)
    assert chart_sigma_unshift(chart_sigma_shift(p)) == p
    b = chart_okamoto(p)
    # the sigma shift is b4 -> b4 + 1 with the rest fixed
    bs = chart_okamoto(chart_sigma_shift(p))
    assert bs == OkamotoParams(b.b1, b.b2, b.b3, b.b4 + 1)


def test_pvi_params():
    assert pvi_params_at(1, SeedParams(3, 2, 1)) == PviParams(8, Fraction(-9, 2), Fraction(9, 2), -4)
    b = chart_okamoto(SeedParams(4, 3, 1))
    assert pvi_params_from_okamoto(b, 2) == pvi_params_at(2, SeedParams(4, 3, 1))


def test_seed_q_value():
    assert seed_q(SeedParams(3, 2, 1)).evaluate(2) == Fraction(38, 13)
    assert seed_q(SeedParams(1, 1, 1)).num == 2 * t


def test_v_poly_small():
    # V(a, m, b, n) at b = 0 is the constant -1
    assert v_poly(3, 2, 0, 4) == Poly([-1])
    assert v_poly(1, 1, 1, 1).degree == 1


def test_perturbed():
    pv = PviParams(1, 2, 3, 4)
    assert pv.perturbed(alpha=1) == PviParams(2, 2, 3, 4)
