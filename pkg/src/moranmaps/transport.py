"""Pushforward measures, the component ratio functional, the image
decomposition, and the search for a measure-preserving sub-cylinder."""

from dataclasses import dataclass
from fractions import Fraction

from .address import format_address
from .errors import (
    BoundViolated,
    DecompositionFails,
    IdentityViolated,
    NotApplicable,
    NotFoundWithinDepth,
    ValidationError,
)
from .maps import image_of_cylinder, lipschitz_bounds, validate_map
from .structure import (
    UNCONSTRAINED,
    Component,
    approximation,
    check_hypotheses,
    components,
    direct_offsprings,
)


def addresses_at(schedule, depth):
    """All rank-`depth` addresses in lexicographic order."""
    out = [()]
    for k in range(1, depth + 1):
        n = schedule.n(k)
        out = [a + (i,) for a in out for i in range(n)]
    return out


@dataclass(frozen=True)
class TransportContext:
    """Everything the decomposition and locus machinery needs, certified."""

    m: object
    C: Fraction
    eta0: object  # Fraction, UNCONSTRAINED, or None
    gamma: object  # Fraction or None
    beta: int
    source_report: object = None
    target_report: object = None

    @property
    def source_schedule(self):
        return self.m.source_schedule

    @property
    def source_layout(self):
        return self.m.source_layout

    @property
    def target_schedule(self):
        return self.m.target_schedule

    @property
    def target_layout(self):
        return self.m.target_layout

    @property
    def p0(self):
        return compute_p0(self.C, self.eta0, self.gamma)

    @property
    def epsilon(self):
        return compute_epsilon(self.beta, self.p0)


def build_context(m, bound_depth=6):
    """Validate the map, assemble the constants, certify C at bound_depth."""
    problems = validate_map(m)
    if problems:
        raise ValidationError("; ".join(f"{code}: {msg}" for code, msg in problems))
    src = check_hypotheses(m.source_schedule, m.source_layout)
    tgt = check_hypotheses(m.target_schedule, m.target_layout)
    finite = [e for e in (src.eta0, tgt.eta0) if e is not None and e is not UNCONSTRAINED]
    if src.eta0 is None or tgt.eta0 is None:
        eta0 = None
    elif finite:
        eta0 = min(finite)
    else:
        eta0 = UNCONSTRAINED
    if src.gamma is None or tgt.gamma is None:
        gamma = None
    else:
        gamma = min(src.gamma, tgt.gamma)
    bounds = lipschitz_bounds(m, max(bound_depth, m.section_depth))
    return TransportContext(
        m=m,
        C=bounds.upper,
        eta0=eta0,
        gamma=gamma,
        beta=max(src.beta, tgt.beta),
        source_report=src,
        target_report=tgt,
    )


def pushforward_cylinder_mass(ctx, sigma):
    """nu(f(E_sigma)): exact sum of target masses over the image cylinders."""
    return sum(
        (ctx.target_schedule.cylinder_measure(t) for t in image_of_cylinder(ctx.m, sigma)),
        Fraction(0),
    )


@dataclass(frozen=True)
class RatioRecord:
    key: object  # address or Component
    mu_mass: Fraction
    nu_mass: Fraction
    phi: Fraction


def phi(ctx, u):
    """The ratio functional nu(f(U cap E)) / mu(U) on components or cylinders."""
    if isinstance(u, Component):
        mu = ctx.source_schedule.cylinder_measure(u.addresses[0]) * u.member_count
        nu = sum(
            (pushforward_cylinder_mass(ctx, a) for a in u.addresses), Fraction(0)
        )
    else:
        u = tuple(u)
        mu = ctx.source_schedule.cylinder_measure(u)
        nu = pushforward_cylinder_mass(ctx, u)
    return RatioRecord(key=u, mu_mass=mu, nu_mass=nu, phi=nu / mu)


@dataclass(frozen=True)
class EquivalenceReport:
    alpha: Fraction  # C + 2, the bound actually enforced
    alpha_observed: Fraction  # tightest ratio seen in either direction
    checked: int
    depth: int


def check_equivalence_bound(ctx, depth, C=None):
    """Verify nu(f(E_sigma)) <= (C+2) mu(E_sigma) and the symmetric bound
    for every address of rank <= depth; raises BoundViolated with a witness."""
    C = ctx.C if C is None else Fraction(C)
    alpha = C + 2
    observed = Fraction(1)
    checked = 0
    for k in range(depth + 1):
        for sigma in addresses_at(ctx.source_schedule, k):
            mu = ctx.source_schedule.cylinder_measure(sigma)
            nu = pushforward_cylinder_mass(ctx, sigma)
            checked += 1
            if nu > alpha * mu:
                raise BoundViolated(format_address(sigma), f"nu {nu} > {alpha} * mu {mu}")
            if mu > alpha * nu:
                raise BoundViolated(format_address(sigma), f"mu {mu} > {alpha} * nu {nu}")
            observed = max(observed, nu / mu, mu / nu)
    return EquivalenceReport(alpha=alpha, alpha_observed=observed, checked=checked, depth=depth)


def compute_p0(C, eta0, gamma):
    """Smallest positive integer p with (gamma - 1) gamma^p > 2C / eta0."""
    if gamma is None or gamma <= 1:
        raise NotApplicable(f"gamma = {gamma} is not > 1")
    if eta0 is None or eta0 is UNCONSTRAINED:
        raise NotApplicable(f"no finite separation constant (eta0 = {eta0})")
    target = 2 * Fraction(C) / eta0
    p = 1
    while (gamma - 1) * gamma**p <= target:
        p += 1
    return p


def compute_epsilon(beta, p0):
    """The contradiction margin 1 / (2 (1 + 8 beta^(2 p0 + 5)))."""
    return Fraction(1, 2 * (1 + 8 * beta ** (2 * p0 + 5)))


def components_at(schedule, layout, rank):
    return components(approximation(schedule, layout, rank))


def _component_below(ctx, root, max_probe=8):
    """First component (by rank, then position) whose members all extend root."""
    root = tuple(root)
    for rank in range(len(root), len(root) + max_probe + 1):
        for comp in components_at(ctx.source_schedule, ctx.source_layout, rank):
            if all(a[: len(root)] == root for a in comp.addresses):
                return comp
    raise NotFoundWithinDepth(f"no component inside {format_address(root)} within probe depth")


def iter_components_below(ctx, u0, max_rank):
    """u0 and all its offspring components of rank <= max_rank, in order of
    rank, then left to right."""
    frontier = [u0]
    while frontier:
        for comp in frontier:
            yield comp
        if frontier[0].rank >= max_rank:
            return
        frontier = [
            child
            for comp in frontier
            for child in direct_offsprings(comp, ctx.source_schedule, ctx.source_layout)
        ]


def chi_over_depth(ctx, root, max_rank):
    """Depth-bounded maximum of phi over components below root, with witness.

    Ties go to the lowest rank, then the leftmost span (enumeration order).
    """
    u0 = _component_below(ctx, root, max_probe=max(0, max_rank - len(root)))
    best = None
    for comp in iter_components_below(ctx, u0, max_rank):
        record = phi(ctx, comp)
        if best is None or record.phi > best.phi:
            best = record
    return best.phi, best


def _preorder(schedule, root, max_depth):
    yield root
    if len(root) >= max_depth:
        return
    n = schedule.n(len(root) + 1)
    for i in range(n):
        yield from _preorder(schedule, root + (i,), max_depth)


def _constant_below(ctx, sigma, levels):
    """Exact ratio if phi is constant on every sub-cylinder down `levels`
    further levels, else None."""
    base = phi(ctx, sigma).phi
    frontier = [tuple(sigma)]
    for _ in range(levels):
        next_frontier = []
        for a in frontier:
            n = ctx.source_schedule.n(len(a) + 1)
            for i in range(n):
                child = a + (i,)
                if phi(ctx, child).phi != base:
                    return None
                next_frontier.append(child)
        frontier = next_frontier
    return base


def find_preserving_cylinder(ctx, sigma, max_depth, certify_depth=6):
    """First sub-cylinder (preorder, lexicographic) on which the pushforward
    to measure ratio is exactly constant down certify_depth further levels.

    For section-pairing maps the ratio is exactly constant below the section
    depth, so the certificate is conclusive, not merely depth-sampled.
    """
    sigma = tuple(sigma)
    ctx.source_schedule.validate_address(sigma)
    for candidate in _preorder(ctx.source_schedule, sigma, max_depth):
        ratio = _constant_below(ctx, candidate, certify_depth)
        if ratio is not None:
            return candidate, ratio
    raise NotFoundWithinDepth(
        f"no constant-ratio sub-cylinder of {format_address(sigma)} within depth {max_depth}"
    )


@dataclass(frozen=True)
class Decomposition:
    """Exact decomposition of the image of a component of the source grid."""

    component: Component  # I, rank k, in the source grid
    ancestor: Component  # J*, rank k - p0, in the target grid
    parts: tuple  # components of the rank k + p0 target grid
    p0: int
    h_bound: int  # 2 beta^(2 p0 + 1)

    @property
    def h(self):
        return len(self.parts)

    @property
    def within_bound(self):
        return self.h <= self.h_bound


def _expand_to_depth(schedule, addr, depth):
    out = [tuple(addr)]
    for k in range(len(addr) + 1, depth + 1):
        n = schedule.n(k)
        out = [a + (i,) for a in out for i in range(n)]
    return out


def _image_parts(ctx, comp, p0, refine_extra):
    """Components of the rank comp.rank + p0 target grid whose union exactly
    tiles the image of comp, enforcing the in-or-out dichotomy."""
    k = comp.rank
    image_addrs = []
    for a in comp.addresses:
        image_addrs.extend(image_of_cylinder(ctx.m, a))
    depth = max([k + p0 + refine_extra] + [len(t) for t in image_addrs])
    covered = set()
    for t in image_addrs:
        covered.update(_expand_to_depth(ctx.target_schedule, t, depth))

    parts = []
    parts_cover = set()
    for j in components_at(ctx.target_schedule, ctx.target_layout, k + p0):
        cells = [
            c
            for a in j.addresses
            for c in _expand_to_depth(ctx.target_schedule, a, depth)
        ]
        inside = sum(1 for c in cells if c in covered)
        if inside == len(cells):
            parts.append(j)
            parts_cover.update(cells)
        elif inside != 0:
            raise DecompositionFails(
                f"rank-{k + p0} component [{j.span.left}, {j.span.right}]",
                f"covers {inside} of {len(cells)} refined cells",
            )
    if parts_cover != covered:
        raise DecompositionFails("image", "not an exact union of refined-grid components")
    return parts


def decompose_image(ctx, comp, p0=None, refine_extra=2):
    """Realize the image of `comp` as an exact union of deeper target
    components inside a single shallower one, checking the in-or-out
    dichotomy for every component of the refined target grid."""
    p0 = ctx.p0 if p0 is None else p0
    k = comp.rank
    if k < p0:
        raise ValidationError(f"component rank {k} below p0 = {p0}")
    parts = _image_parts(ctx, comp, p0, refine_extra)
    ancestors = [
        j
        for j in components_at(ctx.target_schedule, ctx.target_layout, k - p0)
        if all(j.span.contains(p.span) for p in parts)
    ]
    if len(ancestors) != 1:
        raise DecompositionFails(
            "ancestor", f"{len(ancestors)} rank-{k - p0} components contain all parts"
        )
    return Decomposition(
        component=comp,
        ancestor=ancestors[0],
        parts=tuple(parts),
        p0=p0,
        h_bound=2 * ctx.beta ** (2 * p0 + 1),
    )


@dataclass(frozen=True)
class RatioIdentityReport:
    phi_parent: Fraction
    phi_child: Fraction
    ratio: Fraction  # phi_child / phi_parent
    count_form: Fraction  # the same ratio rebuilt from basic-interval counts
    denominator: int
    denominator_bound: int


def ratio_identity_check(ctx, parent, child, p0=None):
    """Recompute the parent/child phi jump from raw basic-interval counts and
    verify it matches the direct evaluation exactly, along with the
    denominator bound 8 beta^(2 p0 + 5)."""
    p0 = ctx.p0 if p0 is None else p0
    if child.rank != parent.rank + 1 or not parent.span.contains(child.span):
        raise ValidationError("second component is not a direct offspring of the first")
    k = parent.rank
    rec_parent = phi(ctx, parent)
    rec_child = phi(ctx, child)

    parts_parent = _image_parts(ctx, parent, p0, refine_extra=2)
    parts_child = _image_parts(ctx, child, p0, refine_extra=2)
    sum_parent = sum(j.member_count for j in parts_parent)
    sum_child = sum(i.member_count for i in parts_child)

    # cross-check the pushforward masses against the count sums
    nu_parent = Fraction(sum_parent) * ctx.target_schedule.cylinder_measure(
        parts_parent[0].addresses[0]
    )
    nu_child = Fraction(sum_child) * ctx.target_schedule.cylinder_measure(
        parts_child[0].addresses[0]
    )
    if nu_parent != rec_parent.nu_mass or nu_child != rec_child.nu_mass:
        raise IdentityViolated(
            f"count-based masses ({nu_parent}, {nu_child}) disagree with "
            f"pushforward masses ({rec_parent.nu_mass}, {rec_child.nu_mass})"
        )

    n_deep = ctx.target_schedule.n(k + p0 + 1)
    n_next = ctx.source_schedule.n(k + 1)
    # mu(U)/mu(U_j0) = (#U / #U_j0) * n_{k+1}, so n_next lands in the numerator
    count_form = (
        Fraction(sum_child, sum_parent)
        * Fraction(1, n_deep)
        * Fraction(parent.member_count, child.member_count)
        * n_next
    )
    direct = rec_child.phi / rec_parent.phi
    if count_form != direct:
        raise IdentityViolated(f"count form {count_form} != direct ratio {direct}")
    denominator = sum_parent * n_deep * child.member_count
    return RatioIdentityReport(
        phi_parent=rec_parent.phi,
        phi_child=rec_child.phi,
        ratio=direct,
        count_form=count_form,
        denominator=denominator,
        denominator_bound=8 * ctx.beta ** (2 * p0 + 5),
    )
