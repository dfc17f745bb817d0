"""Exact interval geometry of basic intervals under a placement rule.

The Moran structure fixes only the child/parent length ratio r_k; where the
n_k children sit inside the parent is free.  LayoutRule pins that down.  All
endpoints are Fractions; no floating point enters the geometry.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .schedule import _as_fraction

KINDS = ("ends_anchored", "left_packed", "right_packed", "explicit")


@dataclass(frozen=True)
class Interval:
    left: Fraction
    right: Fraction

    def __post_init__(self):
        if self.left > self.right:
            raise ValidationError(f"interval with left {self.left} > right {self.right}")

    @property
    def length(self):
        return self.right - self.left

    def contains(self, other):
        return self.left <= other.left and other.right <= self.right

    def gap_to(self, other):
        """Distance to a later interval; negative means interior overlap."""
        return other.left - self.right


UNIT = Interval(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class LayoutRule:
    """Per-level placement of the n_k children inside their parent.

    Offsets are left endpoints of the children as fractions of the parent
    length.  The uniform kinds derive offsets from (n_k, r_k); "explicit"
    carries its own eventually-periodic table of offset lists.
    """

    kind: str = "ends_anchored"
    offsets_preamble: tuple = ()
    offsets_period: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown layout kind {self.kind!r}")
        pre = tuple(tuple(_as_fraction(x) for x in row) for row in self.offsets_preamble)
        per = tuple(tuple(_as_fraction(x) for x in row) for row in self.offsets_period)
        object.__setattr__(self, "offsets_preamble", pre)
        object.__setattr__(self, "offsets_period", per)
        if self.kind == "explicit" and not per:
            raise ValidationError("explicit layout needs a nonempty offsets_period")
        if self.kind != "explicit" and (pre or per):
            raise ValidationError("offset tables are only valid with kind='explicit'")

    @property
    def preamble_len(self):
        return len(self.offsets_preamble)

    @property
    def period_len(self):
        return len(self.offsets_period) if self.kind == "explicit" else 1

    def offsets(self, n, r, k):
        """Child left-offsets at level k, in parent units, leftmost first."""
        if self.kind == "left_packed":
            return tuple(i * r for i in range(n))
        if self.kind == "right_packed":
            lead = 1 - n * r
            return tuple(lead + i * r for i in range(n))
        if self.kind == "ends_anchored":
            if n == 1:
                return (Fraction(0),)
            step = r + (1 - n * r) / (n - 1)
            return tuple(i * step for i in range(n))
        if k <= len(self.offsets_preamble):
            row = self.offsets_preamble[k - 1]
        else:
            row = self.offsets_period[(k - len(self.offsets_preamble) - 1) % len(self.offsets_period)]
        if len(row) != n:
            raise ValidationError(f"level {k}: layout gives {len(row)} offsets but n_k = {n}")
        return row

    def validate_against(self, schedule):
        """Check disjoint interiors and containment at every distinct level."""
        for k in range(1, combined_window(schedule, self) + 1):
            n, r = schedule.value(k)
            offs = self.offsets(n, r, k)
            if offs[0] < 0 or offs[-1] + r > 1:
                raise ValidationError(f"level {k}: children overflow the parent")
            for i in range(n - 1):
                if offs[i + 1] < offs[i] + r:
                    raise ValidationError(
                        f"level {k}: children {i} and {i + 1} overlap (offsets {offs[i]}, {offs[i + 1]})"
                    )


def combined_window(schedule, layout):
    """Levels 1..window determine all (schedule, layout) level data exactly."""
    pre = max(schedule.preamble_len, layout.preamble_len)
    return pre + math.lcm(schedule.period_len, layout.period_len)


def basic_interval(schedule, layout, sigma):
    """Exact endpoints of the basic interval J_sigma, starting from [0,1]."""
    schedule.validate_address(sigma)
    left = Fraction(0)
    length = Fraction(1)
    for k, digit in enumerate(sigma, start=1):
        n, r = schedule.value(k)
        offs = layout.offsets(n, r, k)
        left += offs[digit] * length
        length *= r
    return Interval(left, left + length)


def _tail_extreme(schedule, layout, depth, pick_last):
    """Normalized inf (or sup) of the limit set inside a rank-`depth` interval.

    Satisfies t(k) = off(k+1) + r_{k+1} t(k+1) with off the first (or last)
    child offset.  Eventual periodicity closes the recursion exactly: in the
    periodic regime t(k) = t(k + period), so one unrolled period gives
    t = A + B t with B = product of the period's ratios < 1.
    """
    window = combined_window(schedule, layout)
    period = math.lcm(schedule.period_len, layout.period_len)
    pre = window - period

    def level_offset(k):
        n, r = schedule.value(k)
        offs = layout.offsets(n, r, k)
        return offs[-1] if pick_last else offs[0]

    m = depth if depth <= pre else pre + (depth - pre) % period
    if m >= pre:
        a, b = Fraction(0), Fraction(1)
        for k in range(m + 1, m + period + 1):
            a += b * level_offset(k)
            b *= schedule.r(k)
        return a / (1 - b)
    t = _tail_extreme(schedule, layout, pre, pick_last)
    for k in range(pre - 1, m - 1, -1):
        t = level_offset(k + 1) + schedule.r(k + 1) * t
    return t


def cylinder_extremes(schedule, layout, sigma):
    """Exact (min, max) of the limit-set cylinder at address sigma.

    The infimum is the geometric position of the code sigma,0,0,...; the
    supremum that of sigma,n-1,n-1,...; both are closed-form rationals.
    """
    box = basic_interval(schedule, layout, sigma)
    k = len(sigma)
    lo = _tail_extreme(schedule, layout, k, pick_last=False)
    hi = _tail_extreme(schedule, layout, k, pick_last=True)
    return box.left + box.length * lo, box.left + box.length * hi
