"""Section-pairing maps: concrete, checkable bi-Lipschitz bijections.

A section is a finite complete prefix code of addresses; pairing two sections
bijectively and continuing codes identically yields a piecewise-similar map
between the two limit sets.  Validation certifies well-definedness, and the
bound computation sandwiches the bi-Lipschitz constant between an attained
sample quotient and a hull-over-distance estimate.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .address import format_address, is_prefix
from .errors import PrefixTooShort, TouchingCylinders, ValidationError
from .geometry import basic_interval, cylinder_extremes
from .structure import approximation


def section_violations(schedule, addresses, side):
    """Check a finite address set for the complete-prefix-code property."""
    problems = []
    for a in addresses:
        try:
            schedule.validate_address(a)
        except ValidationError as exc:
            problems.append(("IncompleteSection", f"{side} {format_address(a)}: {exc}"))
    if problems:
        return problems
    if len(set(addresses)) != len(addresses):
        problems.append(("PrefixOverlap", f"{side} section repeats an address"))
    for a in addresses:
        for b in addresses:
            if a != b and is_prefix(a, b):
                problems.append(
                    ("PrefixOverlap", f"{side} {format_address(a)} is a prefix of {format_address(b)}")
                )
    total = sum(schedule.cylinder_measure(a) for a in addresses)
    if total != 1:
        problems.append(
            ("IncompleteSection", f"{side} section measures sum to {total}, not 1")
        )
    return problems


@dataclass(frozen=True)
class SectionPairingMap:
    """Bijection between two sections with identity continuation on codes."""

    pairs: tuple  # ((sigma, tau), ...) source address -> target address
    source_schedule: object
    source_layout: object
    target_schedule: object
    target_layout: object

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", tuple((tuple(s), tuple(t)) for s, t in self.pairs)
        )

    @property
    def section_depth(self):
        return max(len(s) for s, _ in self.pairs)

    def inverse(self):
        return SectionPairingMap(
            tuple((t, s) for s, t in self.pairs),
            self.target_schedule,
            self.target_layout,
            self.source_schedule,
            self.source_layout,
        )


def identity_map(schedule, layout):
    return SectionPairingMap((((), ()),), schedule, layout, schedule, layout)


def _continuation_window(m, src_depth, tgt_depth):
    """How many levels below a pair pin down all remaining level data."""
    pre_s = max(m.source_schedule.preamble_len, m.source_layout.preamble_len)
    pre_t = max(m.target_schedule.preamble_len, m.target_layout.preamble_len)
    per_s = math.lcm(m.source_schedule.period_len, m.source_layout.period_len)
    per_t = math.lcm(m.target_schedule.period_len, m.target_layout.period_len)
    return max(pre_s - src_depth, pre_t - tgt_depth, 0) + math.lcm(per_s, per_t)


def validate_map(m):
    """All violations of the section/bijection/continuation requirements.

    An empty list certifies that the map is a well-defined bijection between
    the two limit sets, piecewise similar, hence bi-Lipschitz.
    """
    problems = []
    sources = [s for s, _ in m.pairs]
    targets = [t for _, t in m.pairs]
    problems += section_violations(m.source_schedule, sources, "source")
    problems += section_violations(m.target_schedule, targets, "target")
    if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
        problems.append(("NotBijective", "pairing repeats a source or target address"))
    if problems:
        return problems

    for s, t in m.pairs:
        horizon = _continuation_window(m, len(s), len(t))
        for j in range(1, horizon + 1):
            ns = m.source_schedule.n(len(s) + j)
            nt = m.target_schedule.n(len(t) + j)
            if ns != nt:
                problems.append(
                    (
                        "LevelMismatch",
                        f"pair {format_address(s)}->{format_address(t)}: "
                        f"branching {ns} vs {nt} at continuation level {j}",
                    )
                )
                break
            rs = m.source_schedule.r(len(s) + j)
            rt = m.target_schedule.r(len(t) + j)
            offs = m.source_layout.offsets(ns, rs, len(s) + j)
            offt = m.target_layout.offsets(nt, rt, len(t) + j)
            if rs != rt or offs != offt:
                problems.append(
                    (
                        "LayoutMismatch",
                        f"pair {format_address(s)}->{format_address(t)}: "
                        f"subtree geometry differs at continuation level {j}",
                    )
                )
                break

    # points on a shared boundary of two pieces would carry two codes; the
    # symbolic map is only certified geometric when piece boundaries have gaps
    boxes = sorted(
        ((basic_interval(m.source_schedule, m.source_layout, s), s) for s, _ in m.pairs),
        key=lambda pair: (pair[0].left, pair[0].right),
    )
    for (a, sa), (b, sb) in zip(boxes, boxes[1:]):
        if a.gap_to(b) == 0:
            problems.append(
                (
                    "LayoutMismatch",
                    f"section pieces {format_address(sa)} and {format_address(sb)} "
                    "share a boundary point (touching pieces)",
                )
            )
    return problems


def _lookup(pairs, sigma):
    """Resolve sigma against a section: ('piece', tau+continuation) or
    ('split', [taus of the elements extending sigma])."""
    for s, t in pairs:
        if is_prefix(s, sigma):
            return "piece", t + sigma[len(s):]
    hits = sorted(t for s, t in pairs if is_prefix(sigma, s))
    if not hits:
        raise ValidationError(f"address {format_address(sigma)} not covered by the section")
    return "split", hits


def image_of_cylinder(m, sigma):
    """F-addresses whose cylinders exactly tile f(E_sigma)."""
    kind, result = _lookup(m.pairs, tuple(sigma))
    return [result] if kind == "piece" else result


def preimage_of_cylinder(m, tau):
    """E-addresses whose cylinders exactly tile f^{-1}(F_tau)."""
    return image_of_cylinder(m.inverse(), tau)


def apply_point(m, code):
    """Rewrite a code prefix through its section pair, keeping the tail."""
    code = tuple(code)
    for s, t in m.pairs:
        if is_prefix(s, code):
            return t + code[len(s):]
    if any(is_prefix(code, s) for s, _ in m.pairs):
        raise PrefixTooShort(
            f"code {format_address(code)} is shorter than its section element"
        )
    raise ValidationError(f"code {format_address(code)} not covered by the section")


@dataclass(frozen=True)
class LipschitzBounds:
    lower: Fraction
    upper: Fraction
    depth_used: int


def piece_ratios(m):
    """Exact similarity ratio of each piece: |J_tau| / |J_sigma|."""
    out = []
    for s, t in m.pairs:
        src = basic_interval(m.source_schedule, m.source_layout, s)
        tgt = basic_interval(m.target_schedule, m.target_layout, t)
        out.append(tgt.length / src.length)
    return out


def lipschitz_bounds(m, depth):
    """Certified two-sided enclosure of the bi-Lipschitz constant.

    Lower bound: attained quotients, from the exact within-piece similarity
    ratios and from sampled extreme-point pairs of rank-`depth` cylinders
    (their images are known exactly under identity continuation).  Upper
    bound: within-piece ratios combined with hull-span over distance across
    every pair of rank-`depth` cylinders, in both directions.
    """
    if depth < m.section_depth:
        raise ValidationError(
            f"depth {depth} below section depth {m.section_depth}"
        )
    approx = approximation(m.source_schedule, m.source_layout, depth)
    pieces = {s: idx for idx, (s, _) in enumerate(m.pairs)}
    cylinders = []
    for sigma, box in zip(approx.addresses, approx.intervals):
        piece = next(idx for s, idx in pieces.items() if is_prefix(s, sigma))
        tau = image_of_cylinder(m, sigma)[0]
        img_box = basic_interval(m.target_schedule, m.target_layout, tau)
        lo, hi = cylinder_extremes(m.source_schedule, m.source_layout, sigma)
        ilo, ihi = cylinder_extremes(m.target_schedule, m.target_layout, tau)
        cylinders.append((piece, box, img_box, (lo, hi), (ilo, ihi)))

    lower = Fraction(0)
    for rho in piece_ratios(m):
        lower = max(lower, rho, 1 / rho)
    upper = lower

    for a in range(len(cylinders)):
        piece_a, box_a, img_a, ext_a, iext_a = cylinders[a]
        for b in range(a + 1, len(cylinders)):
            piece_b, box_b, img_b, ext_b, iext_b = cylinders[b]
            if piece_a == piece_b:
                # same piece: the restriction is one similarity, covered
                # exactly by its rho above
                continue
            # sampled point pairs sharpen the lower bound
            for x, fx in zip(ext_a, iext_a):
                for y, fy in zip(ext_b, iext_b):
                    if x != y and fx != fy:
                        q = abs(fx - fy) / abs(x - y)
                        lower = max(lower, q, 1 / q)
            dist_src = box_b.left - box_a.right  # boxes are sorted
            dist_img = max(img_a.left, img_b.left) - min(img_a.right, img_b.right)
            if dist_src <= 0 or dist_img <= 0:
                raise TouchingCylinders(
                    f"rank-{depth} cylinders {format_address(approx.addresses[a])} and "
                    f"{format_address(approx.addresses[b])} (or their images) touch; "
                    "the cross-piece bound is unbounded at this depth"
                )
            hull_img = max(img_a.right, img_b.right) - min(img_a.left, img_b.left)
            hull_src = box_b.right - box_a.left
            upper = max(upper, hull_img / dist_src, hull_src / dist_img)
    return LipschitzBounds(lower=lower, upper=upper, depth_used=depth)
