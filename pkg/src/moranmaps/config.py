"""Config ingestion: one TOML document drives the source set, the optional
target set, and the optional section pairing."""

import sys
from dataclasses import dataclass
from fractions import Fraction

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .address import parse_address
from .errors import ParseError, ValidationError
from .geometry import LayoutRule
from .maps import SectionPairingMap
from .schedule import ParameterSchedule
from .structure import DEFAULT_NODE_BUDGET


def parse_rational(text):
    """Parse "p/q" (or a bare integer) into an exact reduced Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    try:
        frac = Fraction(str(text).replace(" ", ""))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None
    return frac


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RunConfig:
    source_schedule: ParameterSchedule
    source_layout: LayoutRule
    target_schedule: ParameterSchedule
    target_layout: LayoutRule
    pairs: tuple  # ((sigma, tau), ...) or () when no [map] section
    node_budget: int = DEFAULT_NODE_BUDGET

    @property
    def has_map(self):
        return bool(self.pairs)

    def build_map(self):
        if not self.pairs:
            raise ValidationError("config has no [map] section")
        return SectionPairingMap(
            self.pairs,
            self.source_schedule,
            self.source_layout,
            self.target_schedule,
            self.target_layout,
        )


def _schedule_from(table, where):
    try:
        return ParameterSchedule(
            n_preamble=tuple(table.get("n_preamble", ())),
            n_period=tuple(table.get("n_period", ())),
            r_preamble=tuple(parse_rational(r) for r in table.get("r_preamble", ())),
            r_period=tuple(parse_rational(r) for r in table.get("r_period", ())),
        )
    except ValidationError as exc:
        raise ValidationError(f"[{where}]: {exc}") from None


def _layout_from(table, where):
    try:
        return LayoutRule(
            kind=table.get("kind", "ends_anchored"),
            offsets_preamble=tuple(
                tuple(parse_rational(x) for x in row)
                for row in table.get("offsets_preamble", ())
            ),
            offsets_period=tuple(
                tuple(parse_rational(x) for x in row)
                for row in table.get("offsets_period", ())
            ),
        )
    except ValidationError as exc:
        raise ValidationError(f"[{where}]: {exc}") from None


def parse_config(text):
    """Parse and validate a config document into a RunConfig.

    Schedule and layout invariants are enforced here; map-level invariants
    (section completeness, bijectivity, continuation compatibility) are the
    job of validate_map so that `map validate` can report them.
    """
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"config parse error: {exc}") from None

    if "schedule" not in doc:
        raise ParseError("config is missing the [schedule] section")
    schedule = _schedule_from(doc["schedule"], "schedule")
    layout = _layout_from(doc.get("layout", {}), "layout")
    layout.validate_against(schedule)

    target = doc.get("target", {})
    if "schedule" in target:
        target_schedule = _schedule_from(target["schedule"], "target.schedule")
    else:
        target_schedule = schedule
    if "layout" in target:
        target_layout = _layout_from(target["layout"], "target.layout")
    else:
        target_layout = layout
    target_layout.validate_against(target_schedule)

    pairs = ()
    if "map" in doc:
        raw = doc["map"].get("pairs", ())
        if not raw:
            raise ParseError("[map] section needs a nonempty pairs list")
        try:
            pairs = tuple(
                (parse_address(str(s)), parse_address(str(t))) for s, t in raw
            )
        except (TypeError, ValueError) as exc:
            raise ParseError(f"[map] pairs must be two-element address strings: {exc}") from None

    budget = doc.get("limits", {}).get("node_budget", DEFAULT_NODE_BUDGET)
    if not isinstance(budget, int) or budget < 1:
        raise ParseError(f"node_budget must be a positive integer, got {budget!r}")

    return RunConfig(
        source_schedule=schedule,
        source_layout=layout,
        target_schedule=target_schedule,
        target_layout=target_layout,
        pairs=pairs,
        node_budget=budget,
    )
