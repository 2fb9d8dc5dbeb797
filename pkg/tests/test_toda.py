from fractions import Fraction

import pytest

from pvitau.parampoly import R, S, pp_eval
from pvitau.poly import ONE, Poly, gcd
from pvitau.seeds import SeedParams
from pvitau.toda import (AUTO_PRIMITIVE, RAW, CnSchedule, NormalizationStrategy, SequenceCache,
                         bilinear_residuals, cn_value, consecutive_gcds, content_trace, generate_sequence,
                         k_coefficient, k_coefficient_okamoto, scheduled, toda_rhs, toda_step)

t = Poly.t()


def test_prime3_run():
    seq = generate_sequence("T", SeedParams(3, 2, 1), 3, scheduled("prime:3"), seed_scale=Fraction(1, 3))
    assert seq[1] == ONE
    assert seq[2] == 5 * t ** 2 - 5 * t + 1
    assert seq[3] == 35 * t ** 4 - 70 * t ** 3 + 51 * t ** 2 - 16 * t + 2
    assert seq.contents == [1, 1, 1]


def test_raw_run_content_trace():
    seq = generate_sequence("T", SeedParams(3, 2, 1), 5, RAW)
    trace = content_trace(seq)
    assert trace[0] == (2, 3) and trace[1] == (3, 45)
    assert seq.ok


def test_auto_primitive_records_contents():
    seq = generate_sequence("T", SeedParams(3, 2, 1), 5, AUTO_PRIMITIVE)
    assert all(content_primitive_one(P) for P in seq.polys)
    assert all(r.is_zero for r in bilinear_residuals(seq))


def content_primitive_one(P):
    from pvitau.poly import content
    return content(P) == 1


@pytest.mark.parametrize("fam", ["T", "S"])
@pytest.mark.parametrize("p", [(3, 2, 1), (4, 3, 1), (1, 1, 1), (Fraction(2, 3), 2, Fraction(5, 7))])
def test_degree_and_coprimality(fam, p):
    seq = generate_sequence(fam, SeedParams(*p), 6)
    assert seq.ok
    for n in range(1, 7):
        assert seq[n].degree == seq.expected_degree(n)
    if (fam, p) != ("S", (1, 1, 1)):
        assert all(g.degree == 0 for g in consecutive_gcds(seq))
    assert all(r.is_zero for r in bilinear_residuals(seq))


@pytest.mark.parametrize("fam,p", [("T", (2, 1, 3)), ("S", (2, 1, 3)), ("S", (1, 1, 1))])
def test_degenerate_charts_share_powers_of_t_minus_1(fam, p):
    # the seed vanishes at t = 1 in these charts, and neighbours then share (t-1)^k
    seq = generate_sequence(fam, SeedParams(*p), 6)
    step = 1 if (fam, p) != ("S", (2, 1, 3)) else 2
    for n, g in enumerate(consecutive_gcds(seq), start=1):
        if n == 1:
            assert g.degree == 0
        else:
            assert g == Poly([-1, 1]) ** (step * (n - 1))


@pytest.mark.parametrize("fam", ["T", "S"])
def test_okamoto_form_gives_same_sequence(fam):
    p = SeedParams(4, 3, 1)
    a = generate_sequence(fam, p, 6)
    b = generate_sequence(fam, p, 6, toda_form="okamoto")
    assert a.polys == b.polys


def test_k_coefficients():
    p = SeedParams(3, 2, 1)
    assert k_coefficient("T", 4, 3) == 3 * 7
    assert k_coefficient("S", 4, 3) == 3 * 6
    for n in range(2, 7):
        for fam in "TS":
            assert k_coefficient_okamoto(fam, n, p) == k_coefficient(fam, n, p.r)


def test_schedules():
    assert cn_value(CnSchedule("prime", p=3), 4) == 9 * 7 * 5
    assert cn_value(CnSchedule("prime", p=3), 3) == Fraction(6 * 4, 3)
    assert cn_value(CnSchedule("example3"), 2) == Fraction(4 * 6, 8)
    assert cn_value(CnSchedule("example3"), 3) == 4 * 5 * 7
    assert cn_value(CnSchedule("example3"), 5) == 16 * 7 * 9
    assert cn_value(CnSchedule.parse("square:2"), 3) == 25
    assert CnSchedule.parse("table:2=5,3=7")(3) == 7
    assert NormalizationStrategy.parse("schedule:prime:5").key == scheduled("prime:5").key
    with pytest.raises(ValueError):
        CnSchedule.parse("bogus")


def test_step_inverts_rhs():
    T2 = 5 * t ** 2 - 5 * t + 1
    T3 = toda_step(ONE, T2, 6, 2)
    assert T3 * 2 == toda_rhs(T2, 6)


def test_generic_run_specializes():
    seq = generate_sequence("T", SeedParams(R, 1, S), 4, scheduled("k"))
    conc = generate_sequence("T", SeedParams(3, 1, 1), 4, scheduled("k"))
    for n in range(1, 5):
        assert pp_eval(seq[n], 3, 1) == conc[n]


def test_cache_serves_prefix():
    cache = SequenceCache()
    p = SeedParams(3, 2, 1)
    long = cache.get("T", p, 6)
    short = cache.get("T", p, 3)
    assert short.polys == long.polys[:3]
    assert len(cache) == 1
