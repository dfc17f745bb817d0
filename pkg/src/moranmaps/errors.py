"""Exception types shared across the package."""


class MoranError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MoranError):
    """A schedule, layout, address or map invariant is violated."""


class ParseError(MoranError):
    """A config document could not be parsed; message carries location context."""


class BudgetExceeded(MoranError):
    """An enumeration would exceed the configured node budget."""

    def __init__(self, requested, budget):
        super().__init__(f"enumeration of {requested} nodes exceeds budget {budget}")
        self.requested = requested
        self.budget = budget


class GammaUndefined(MoranError):
    """Some total gap is zero, so the gap-ratio infimum is undefined."""

    def __init__(self, level):
        super().__init__(f"total gap vanishes at level {level} (n_k * r_k = 1)")
        self.level = level


class WscFails(MoranError):
    """A non-touching sibling pair sits at distance 0 (layout validation bug)."""


class PrefixTooShort(MoranError):
    """A point code is shorter than the section element matching it."""


class TouchingCylinders(MoranError):
    """Distinct cylinders at the working depth touch; the cross-piece
    distance-quotient bound is unbounded at this depth."""


class BoundViolated(MoranError):
    """The measure-equivalence bound failed on a witness cylinder."""

    def __init__(self, address, detail):
        super().__init__(f"equivalence bound violated at {address}: {detail}")
        self.address = address


class DecompositionFails(MoranError):
    """A component of the refined target grid straddles the image boundary."""

    def __init__(self, witness, detail=""):
        super().__init__(f"decomposition dichotomy violated by component {witness} {detail}")
        self.witness = witness


class IdentityViolated(MoranError):
    """The exact ratio identity evaluated to different values on both sides."""


class NotApplicable(MoranError):
    """A derived constant is undefined for these hypotheses (e.g. gamma <= 1)."""


class NotFoundWithinDepth(MoranError):
    """No sub-cylinder certified as measure preserving within the depth limit."""
