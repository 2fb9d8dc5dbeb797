from fractions import Fraction

import pytest

from pvitau.conjectures import (FAIL, PASS, DiscriminantModel, best_possible_scan, conj2_check,
                                conj2_reading_scan, conj3_check, conj4_check, examples_check, h_exponent)
from pvitau.errors import SampleAtFactorZero
from pvitau.poly import Poly
from pvitau.seeds import SeedParams
from pvitau.toda import generate_sequence, scheduled

t = Poly.t()
SAMPLES = [(3, 1), (4, 1), (5, 2), (7, 3)]


def test_conj4_small():
    rep = conj4_check(3, 12)
    assert rep.status == PASS
    with pytest.raises(ValueError):
        conj4_check(9, 5)


def test_unit_schedule_is_not_primitive():
    seq = generate_sequence("T", SeedParams(3, 2, 1), 3, scheduled("unit"), seed_scale=Fraction(1, 3))
    assert seq.contents[2] == 5


def test_examples_seeds_and_status():
    rep = examples_check(2, 8)
    assert rep.status == PASS
    assert rep.notes["T_2"] == 5 * t ** 2 - 5 * t + 1
    assert rep.notes["S_2"] == (2 * t - 1) * (10 * t ** 2 - 10 * t + 1)
    assert examples_check(3, 8).notes["T_2"] == 14 * t ** 3 - 21 * t ** 2 + 9 * t - 1
    assert examples_check(4, 8).status == PASS


def test_best_possible_raw_run_is_not():
    rep = best_possible_scan(generate_sequence("T", SeedParams(3, 2, 1), 5))
    assert rep.status == FAIL
    assert [i["content"] for i in rep.instances][:2] == [3, 45]


def test_best_possible_constant_sequence():
    seq = generate_sequence("T", SeedParams(3, 0, 1), 4)
    assert best_possible_scan(seq).status == PASS


def test_h_exponent():
    assert h_exponent(2, 1) == 1
    assert all(h_exponent(k, j) >= 0 for k in range(1, 6) for j in range(1, k + 1))


def test_conj2_symmetric_reading_wins():
    rep = conj2_check(3, 2, SAMPLES)
    assert rep.status == PASS
    assert rep.notes["estimated_degree"] == rep.notes["stated_degree"] == 18
    assert conj2_reading_scan(3, 2, SAMPLES) == {"printed": FAIL, "symmetric": PASS}


def test_conj2_empty_third_product():
    # n = 2: the third product is empty and both readings coincide
    scan = conj2_reading_scan(2, 2, SAMPLES)
    assert scan["printed"] == scan["symmetric"] == PASS


def test_conj2_factor_zero():
    with pytest.raises(SampleAtFactorZero):
        DiscriminantModel(3, 2).evaluate(3, -1)


def test_conj3_m1():
    rep = conj3_check(1, 4)
    assert rep.status == PASS
    assert all(i["specializes"] for i in rep.instances)
