"""Finite-depth approximations, connected components, and the separation
constants needed by the main-theorem pipeline (beta, gamma, eta0)."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, GammaUndefined, ValidationError, WscFails
from .geometry import Interval, basic_interval, combined_window

DEFAULT_NODE_BUDGET = 2**22


class _Unconstrained:
    """Sentinel: every sibling pair touches at every level, so the weak
    separation inequality is vacuous and no finite constant is implied."""

    def __repr__(self):
        return "Unconstrained"


UNCONSTRAINED = _Unconstrained()


@dataclass(frozen=True)
class Approximation:
    """All rank-`depth` basic intervals, sorted left to right."""

    depth: int
    addresses: tuple
    intervals: tuple


@dataclass(frozen=True)
class Component:
    """A maximal chain of touching rank-k basic intervals."""

    rank: int
    span: Interval
    addresses: tuple
    intervals: tuple

    @property
    def member_count(self):
        return len(self.addresses)


def count_basic_intervals(component):
    """#_k U: how many rank-k basic intervals the component contains."""
    return component.member_count


def approximation(schedule, layout, depth, node_budget=DEFAULT_NODE_BUDGET):
    """Enumerate every rank-`depth` basic interval with exact endpoints."""
    if schedule.node_count(depth) > node_budget:
        raise BudgetExceeded(schedule.node_count(depth), node_budget)
    nodes = [((), Fraction(0), Fraction(1))]
    for k in range(1, depth + 1):
        n, r = schedule.value(k)
        offs = layout.offsets(n, r, k)
        nodes = [
            (addr + (i,), left + offs[i] * length, length * r)
            for addr, left, length in nodes
            for i in range(n)
        ]
    addresses = tuple(addr for addr, _, _ in nodes)
    intervals = tuple(Interval(left, left + length) for _, left, length in nodes)
    return Approximation(depth, addresses, intervals)


def _merge_touching(rank, pairs):
    """Group sorted (address, interval) pairs into maximal touching chains."""
    comps = []
    run = [pairs[0]]
    for prev, cur in zip(pairs, pairs[1:]):
        gap = prev[1].gap_to(cur[1])
        if gap < 0:
            raise ValidationError(
                f"rank-{rank} intervals overlap: {prev[1]} and {cur[1]}"
            )
        if gap == 0:
            run.append(cur)
        else:
            comps.append(run)
            run = [cur]
    comps.append(run)
    return [
        Component(
            rank,
            Interval(chunk[0][1].left, chunk[-1][1].right),
            tuple(a for a, _ in chunk),
            tuple(iv for _, iv in chunk),
        )
        for chunk in comps
    ]


def components(approx):
    """Connected components of the union of the approximation's intervals."""
    pairs = list(zip(approx.addresses, approx.intervals))
    return _merge_touching(approx.depth, pairs)


def direct_offsprings(component, schedule, layout):
    """Components one rank deeper contained in the given component."""
    k = component.rank + 1
    n, r = schedule.value(k)
    offs = layout.offsets(n, r, k)
    pairs = []
    for addr, box in zip(component.addresses, component.intervals):
        for i in range(n):
            left = box.left + offs[i] * box.length
            pairs.append((addr + (i,), Interval(left, left + box.length * r)))
    return _merge_touching(k, pairs)


def is_delta_connected(intervals, delta):
    """Whether consecutive gaps all stay within delta.

    Returns (True, None) or (False, (gap_left, gap_right)) with the first
    offending gap as witness.  A chain of interval endpoints then realizes a
    valid delta-chain in the positive case.
    """
    for prev, cur in zip(intervals, intervals[1:]):
        if prev.gap_to(cur) > delta:
            return False, (prev.right, cur.left)
    return True, None


def wsc_constant(schedule, layout):
    """Supremum of the valid weak-separation constants.

    Per level, the tightest non-touching sibling pair is the smallest
    positive gap between consecutive children; dividing by the parent's free
    length 1 - n_k r_k gives the level ratio, and the exact infimum over
    levels is attained on one preamble-plus-period window.  Returns
    UNCONSTRAINED when every sibling pair touches at every level.
    """
    best = None
    for k in range(1, combined_window(schedule, layout) + 1):
        n, r = schedule.value(k)
        offs = layout.offsets(n, r, k)
        free = 1 - n * r
        gaps = [offs[i + 1] - (offs[i] + r) for i in range(n - 1)]
        if any(g < 0 for g in gaps):
            raise WscFails(f"level {k}: overlapping siblings in explicit layout")
        positive = [g for g in gaps if g > 0]
        if not positive:
            continue
        ratio = min(positive) / free
        if best is None or ratio < best:
            best = ratio
    return UNCONSTRAINED if best is None else best


@dataclass(frozen=True)
class HypothesisReport:
    """Exact verdicts for the three main-theorem hypotheses."""

    beta: int
    gamma: object  # Fraction, or None when undefined
    gamma_error: str
    eta0: object  # Fraction, UNCONSTRAINED, or None on failure
    bounded_branching: bool
    gap_ratio_ok: bool
    separation_ok: bool
    separation_vacuous: bool

    @property
    def all_pass(self):
        return self.bounded_branching and self.gap_ratio_ok and self.separation_ok


def check_hypotheses(schedule, layout):
    """Assemble beta, gamma, eta0 with pass/fail verdicts, never aborting."""
    beta = schedule.beta
    gamma, gamma_error = None, ""
    try:
        gamma = schedule.gamma_inf()
    except GammaUndefined as exc:
        gamma_error = str(exc)
    try:
        eta0 = wsc_constant(schedule, layout)
        wsc_error = ""
    except WscFails as exc:
        eta0 = None
        wsc_error = str(exc)
    vacuous = eta0 is UNCONSTRAINED
    return HypothesisReport(
        beta=beta,
        gamma=gamma,
        gamma_error=gamma_error or wsc_error,
        eta0=eta0,
        bounded_branching=True,  # finite by representation
        gap_ratio_ok=gamma is not None and gamma > 1,
        separation_ok=vacuous or (eta0 is not None and eta0 > 0),
        separation_vacuous=vacuous,
    )
