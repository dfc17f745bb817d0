from fractions import Fraction

import pytest

import moranmaps as mm
from moranmaps.schedule import ParameterSchedule


def mixed(n_pre, n_per, r_pre, r_per):
    return ParameterSchedule(
        n_preamble=n_pre,
        n_period=n_per,
        r_preamble=[Fraction(r) for r in r_pre],
        r_period=[Fraction(r) for r in r_per],
    )


def test_constant_schedule_reads_period(cantor):
    assert cantor.value(7) == (2, Fraction(1, 3))


def test_preamble_read():
    s = mixed([2, 3], [4], ["1/3", "1/4"], ["1/5"])
    assert s.n(2) == 3


def test_period_index_arithmetic():
    # k=6 with preamble length 2 and period (4,5): (6-2-1) mod 2 = 1 -> period[1]... 0-based
    s = mixed([2, 3], [4, 5], ["1/3", "1/4"], ["1/5", "1/6"])
    assert s.n(6) == 5
    assert s.n(5) == 4
    # brute force against explicit unrolling
    unrolled = [2, 3] + [4, 5] * 10
    for k in range(1, 20):
        assert s.n(k) == unrolled[k - 1]


def test_eventual_periodicity_property():
    s = mixed([2, 3], [4, 2], ["1/3", "1/4"], ["1/5", "1/3"])
    for k in range(s.preamble_len + 1, 30):
        assert s.value(k) == s.value(k + s.period_len)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n_period=[1], r_period=[Fraction(1, 3)]),
        dict(n_period=[2], r_period=[Fraction(0)]),
        dict(n_period=[2], r_period=[Fraction(2, 3)]),
        dict(n_period=[], r_period=[Fraction(1, 3)]),
    ],
)
def test_invalid_schedules_rejected(kwargs):
    with pytest.raises(mm.ValidationError):
        ParameterSchedule(**kwargs)


def test_cylinder_measure(cantor):
    assert cantor.cylinder_measure(()) == 1
    assert cantor.cylinder_measure((0, 1, 0)) == Fraction(1, 8)
    s = mixed([2, 3], [2], ["1/3", "1/4"], ["1/3"])
    assert s.cylinder_measure((1, 2)) == Fraction(1, 6)


def test_measure_normalization_small_depths(cantor):
    s = mixed([2, 3], [2], ["1/3", "1/4"], ["1/3"])
    for sched in (cantor, s):
        for depth in range(6):
            total = sum(
                sched.cylinder_measure(a)
                for a in mm.transport.addresses_at(sched, depth)
            )
            assert total == 1


def test_total_gap_cantor(cantor):
    assert cantor.total_gap(1) == Fraction(1, 3)
    assert cantor.total_gap(2) == Fraction(1, 9)


def test_total_gap_vanishes_when_children_fill():
    s = ParameterSchedule(n_period=[2], r_period=[Fraction(1, 2)])
    assert s.total_gap(1) == 0
    assert s.total_gap(5) == 0


def test_gamma_cantor(cantor):
    assert cantor.gamma_inf() == 3


@pytest.mark.parametrize("n,r", [(2, "1/3"), (3, "1/4"), (2, "2/5"), (4, "1/5")])
def test_gamma_constant_schedule_is_reciprocal_ratio(n, r):
    # algebra says Delta_k/Delta_{k+1} = 1/r for a constant schedule; cross-check
    # against direct evaluation of the gap ratios for k <= 20
    s = ParameterSchedule(n_period=[n], r_period=[Fraction(r)])
    assert s.gamma_inf() == 1 / Fraction(r)
    brute = min(s.total_gap(k) / s.total_gap(k + 1) for k in range(1, 21))
    assert s.gamma_inf() == brute


def test_gamma_undefined_reports_level():
    s = mixed([2], [2], ["1/2"], ["1/3"])
    with pytest.raises(mm.GammaUndefined) as exc:
        s.gamma_inf()
    assert exc.value.level == 1


def test_gamma_on_mixed_schedule_matches_brute_force():
    s = mixed([2, 3], [2, 4], ["1/3", "1/4"], ["1/3", "1/6"])
    brute = min(s.total_gap(k) / s.total_gap(k + 1) for k in range(1, 40))
    assert s.gamma_inf() == brute


def test_beta():
    assert mixed([2, 3], [4], ["1/3", "1/4"], ["1/5"]).beta == 4
    assert mm.cantor_schedule().beta == 2


def test_diameter_of_rank(cantor):
    assert cantor.diameter_of_rank(0) == 1
    assert cantor.diameter_of_rank(4) == Fraction(1, 81)
    s = mixed([2, 3], [2], ["1/3", "1/5"], ["1/3"])
    assert s.diameter_of_rank(2) == Fraction(1, 15)


def test_validate_address(cantor):
    cantor.validate_address((0, 1, 1))
    with pytest.raises(mm.ValidationError):
        cantor.validate_address((0, 2))
