"""Exact-arithmetic toolkit for homogeneous Moran sets: interval geometry,
separation constants, section-pairing bi-Lipschitz maps, and pushforward
measure transport."""

from .address import format_address, parse_address
from .errors import (
    BoundViolated,
    BudgetExceeded,
    DecompositionFails,
    GammaUndefined,
    IdentityViolated,
    MoranError,
    NotApplicable,
    NotFoundWithinDepth,
    ParseError,
    PrefixTooShort,
    TouchingCylinders,
    ValidationError,
    WscFails,
)
from .geometry import Interval, LayoutRule, basic_interval, cylinder_extremes
from .maps import (
    LipschitzBounds,
    SectionPairingMap,
    apply_point,
    identity_map,
    image_of_cylinder,
    lipschitz_bounds,
    preimage_of_cylinder,
    validate_map,
)
from .schedule import ParameterSchedule, cantor_schedule
from .structure import (
    UNCONSTRAINED,
    Approximation,
    Component,
    HypothesisReport,
    approximation,
    check_hypotheses,
    components,
    count_basic_intervals,
    direct_offsprings,
    is_delta_connected,
    wsc_constant,
)
from .transport import (
    TransportContext,
    build_context,
    check_equivalence_bound,
    chi_over_depth,
    compute_epsilon,
    compute_p0,
    decompose_image,
    find_preserving_cylinder,
    phi,
    pushforward_cylinder_mass,
    ratio_identity_check,
)
from .config import RunConfig, format_rational, parse_config, parse_rational

__all__ = [name for name in dir() if not name.startswith("_")]
