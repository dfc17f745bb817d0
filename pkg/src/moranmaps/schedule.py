"""Eventually-periodic parameter schedules for homogeneous Moran constructions.

A schedule holds the branching counts n_k and contraction ratios r_k as a
finite preamble followed by a repeating period, so level-indexed quantities
(total gaps, gap ratios, separation constants) are exactly decidable from a
finite window instead of being depth-truncated estimates.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import GammaUndefined, ValidationError


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.replace(" ", ""))
    raise ValidationError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class ParameterSchedule:
    """Sequences {n_k}, {r_k} (1-indexed) given as preamble + nonempty period."""

    n_preamble: tuple = ()
    n_period: tuple = (2,)
    r_preamble: tuple = ()
    r_period: tuple = (Fraction(1, 3),)

    def __post_init__(self):
        object.__setattr__(self, "n_preamble", tuple(int(n) for n in self.n_preamble))
        object.__setattr__(self, "n_period", tuple(int(n) for n in self.n_period))
        object.__setattr__(self, "r_preamble", tuple(_as_fraction(r) for r in self.r_preamble))
        object.__setattr__(self, "r_period", tuple(_as_fraction(r) for r in self.r_period))
        if not self.n_period or not self.r_period:
            raise ValidationError("period parts must be nonempty")
        if len(self.n_preamble) != len(self.r_preamble):
            # unequal preambles are allowed logically, but keeping them aligned
            # makes the periodic window computation uniform; pad with period values
            raise ValidationError("n_preamble and r_preamble must have equal length")
        for k in range(1, self.window + 1):
            n, r = self.value(k)
            if n < 2:
                raise ValidationError(f"n_{k} = {n} < 2")
            if r <= 0:
                raise ValidationError(f"r_{k} = {r} <= 0")
            if n * r > 1:
                raise ValidationError(f"n_{k} * r_{k} = {n * r} > 1: children do not fit")

    @property
    def preamble_len(self):
        return len(self.n_preamble)

    @property
    def period_len(self):
        return math.lcm(len(self.n_period), len(self.r_period))

    @property
    def window(self):
        """Levels 1..window determine every level-indexed quantity exactly."""
        return self.preamble_len + self.period_len

    def n(self, k):
        if k < 1:
            raise ValidationError(f"level index {k} < 1")
        if k <= len(self.n_preamble):
            return self.n_preamble[k - 1]
        return self.n_period[(k - len(self.n_preamble) - 1) % len(self.n_period)]

    def r(self, k):
        if k < 1:
            raise ValidationError(f"level index {k} < 1")
        if k <= len(self.r_preamble):
            return self.r_preamble[k - 1]
        return self.r_period[(k - len(self.r_preamble) - 1) % len(self.r_period)]

    def value(self, k):
        """(n_k, r_k) at 1-based level k."""
        return self.n(k), self.r(k)

    @property
    def beta(self):
        """Exact supremum of the branching counts."""
        return max(self.n_preamble + self.n_period)

    def cylinder_measure(self, sigma):
        """Uniform Bernoulli mass of the cylinder at address sigma: 1/(n_1...n_k)."""
        m = Fraction(1)
        for k in range(1, len(sigma) + 1):
            m /= self.n(k)
        return m

    def diameter_of_rank(self, k):
        """Length r_1...r_k of every rank-k basic interval (1 for k = 0)."""
        d = Fraction(1)
        for j in range(1, k + 1):
            d *= self.r(j)
        return d

    def total_gap(self, k):
        """Free length per rank: Delta_k = r_1...r_{k-1} (1 - n_k r_k)."""
        n, r = self.value(k)
        return self.diameter_of_rank(k - 1) * (1 - n * r)

    def gamma_inf(self):
        """Exact infimum of Delta_k / Delta_{k+1} over all k >= 1.

        The ratio sequence is eventually periodic; its infimum is the minimum
        over one preamble-plus-period window.  Raises GammaUndefined if some
        total gap vanishes (n_k r_k = 1).
        """
        for k in range(1, self.window + 2):
            n, r = self.value(k)
            if n * r == 1:
                raise GammaUndefined(k)
        best = None
        for k in range(1, self.window + 1):
            nk, rk = self.value(k)
            nk1, rk1 = self.value(k + 1)
            ratio = (1 - nk * rk) / (rk * (1 - nk1 * rk1))
            if best is None or ratio < best:
                best = ratio
        return best

    def validate_address(self, sigma):
        for j, d in enumerate(sigma, start=1):
            n = self.n(j)
            if not 0 <= d < n:
                raise ValidationError(f"digit {d} at position {j} out of range [0, {n - 1}]")

    def node_count(self, depth):
        c = 1
        for k in range(1, depth + 1):
            c *= self.n(k)
        return c


def cantor_schedule():
    """The middle-thirds schedule: n = 2, r = 1/3 at every level."""
    return ParameterSchedule(n_period=(2,), r_period=(Fraction(1, 3),))
