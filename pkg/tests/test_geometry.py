from fractions import Fraction

import pytest

import moranmaps as mm
from moranmaps.geometry import Interval, LayoutRule, basic_interval, cylinder_extremes
from moranmaps.schedule import ParameterSchedule


def test_root_interval(cantor, ends):
    assert basic_interval(cantor, ends, ()) == Interval(Fraction(0), Fraction(1))


def test_cantor_two_levels(cantor, ends):
    # hand expansion: right child of [0,1] is [2/3,1]; its left child [2/3,7/9]
    assert basic_interval(cantor, ends, (1, 0)) == Interval(Fraction(2, 3), Fraction(7, 9))


def test_three_children_ends_anchored():
    s = ParameterSchedule(n_period=[3], r_period=[Fraction(1, 5)])
    box = basic_interval(s, LayoutRule(), (1,))
    assert box == Interval(Fraction(2, 5), Fraction(3, 5))


def test_left_and_right_packed():
    s = mm.cantor_schedule()
    assert basic_interval(s, LayoutRule(kind="left_packed"), (1,)) == Interval(
        Fraction(1, 3), Fraction(2, 3)
    )
    assert basic_interval(s, LayoutRule(kind="right_packed"), (0,)) == Interval(
        Fraction(1, 3), Fraction(2, 3)
    )


def test_digit_out_of_range(cantor, ends):
    with pytest.raises(mm.ValidationError):
        basic_interval(cantor, ends, (2,))


def test_explicit_layout_offsets():
    s = mm.cantor_schedule()
    layout = LayoutRule(
        kind="explicit", offsets_period=((Fraction(0), Fraction(1, 2)),)
    )
    layout.validate_against(s)
    assert basic_interval(s, layout, (1,)) == Interval(Fraction(1, 2), Fraction(5, 6))


def test_explicit_layout_overlap_rejected():
    s = mm.cantor_schedule()
    layout = LayoutRule(
        kind="explicit", offsets_period=((Fraction(0), Fraction(1, 4)),)
    )
    with pytest.raises(mm.ValidationError):
        layout.validate_against(s)


def test_explicit_layout_overflow_rejected():
    s = mm.cantor_schedule()
    layout = LayoutRule(
        kind="explicit", offsets_period=((Fraction(1, 3), Fraction(3, 4)),)
    )
    with pytest.raises(mm.ValidationError):
        layout.validate_against(s)


def _walk(schedule, layout, depth):
    frontier = [()]
    for _ in range(depth):
        frontier = [
            a + (i,) for a in frontier for i in range(schedule.n(len(a) + 1))
        ]
    return frontier


@pytest.mark.parametrize("kind", ["ends_anchored", "left_packed", "right_packed"])
def test_nesting_and_homogeneity(kind):
    s = ParameterSchedule(
        n_preamble=[2, 3],
        n_period=[2],
        r_preamble=[Fraction(1, 3), Fraction(1, 4)],
        r_period=[Fraction(1, 3)],
    )
    layout = LayoutRule(kind=kind)
    for sigma in _walk(s, layout, 4):
        parent = basic_interval(s, layout, sigma[:-1])
        child = basic_interval(s, layout, sigma)
        assert parent.contains(child)
        assert child.length / parent.length == s.r(len(sigma))


def test_per_parent_gap_identity(cantor, ends):
    # parent length minus the children's total length is the rank's total gap
    for sigma in _walk(cantor, ends, 3):
        k = len(sigma)
        parent = basic_interval(cantor, ends, sigma)
        child_total = sum(
            basic_interval(cantor, ends, sigma + (i,)).length
            for i in range(cantor.n(k + 1))
        )
        assert parent.length - child_total == cantor.total_gap(k + 1)


def test_cylinder_extremes_cantor(cantor, ends):
    # ends-anchored: the set reaches both endpoints of every basic interval
    assert cylinder_extremes(cantor, ends, ()) == (Fraction(0), Fraction(1))
    assert cylinder_extremes(cantor, ends, (1, 0)) == (Fraction(2, 3), Fraction(7, 9))


def test_cylinder_extremes_right_packed(cantor):
    # right-packed leaves the left third of every interval empty; the infimum
    # is the sum of the lead-in gaps: sum (1/3)^k = 1/2
    layout = LayoutRule(kind="right_packed")
    lo, hi = cylinder_extremes(cantor, layout, ())
    assert lo == Fraction(1, 2)
    assert hi == Fraction(1)


def test_cylinder_extremes_against_deep_descent(cantor):
    # oracle: descend 40 levels of extreme children and bracket the limit
    layout = LayoutRule(kind="right_packed")
    lo, hi = cylinder_extremes(cantor, layout, (0,))
    box = basic_interval(cantor, layout, (0,) + (0,) * 40)
    assert box.left <= lo <= box.right
    box = basic_interval(cantor, layout, (0,) + (1,) * 40)
    assert box.left <= hi <= box.right


def test_interval_validation():
    with pytest.raises(mm.ValidationError):
        Interval(Fraction(1), Fraction(0))
