"""Symbolic addresses for basic intervals and cylinders.

An address is a plain tuple of non-negative ints; the empty tuple addresses
the root interval [0,1].  Serialized form is dot-separated digits ("0.1.2")
so branching counts above 10 stay unambiguous.
"""

from .errors import ValidationError

Address = tuple  # digits; digit j must lie in [0, n_{j+1} - 1] for its schedule

ROOT = ()


def parse_address(text):
    """Parse "0.1.2" into (0, 1, 2); "" parses to the root address."""
    text = text.strip()
    if not text:
        return ()
    try:
        digits = tuple(int(part) for part in text.split("."))
    except ValueError as exc:
        raise ValidationError(f"bad address {text!r}: {exc}") from None
    if any(d < 0 for d in digits):
        raise ValidationError(f"bad address {text!r}: negative digit")
    return digits


def format_address(sigma):
    return ".".join(str(d) for d in sigma)


def is_prefix(sigma, tau):
    """True iff sigma is a (non-strict) prefix of tau."""
    return len(sigma) <= len(tau) and tau[: len(sigma)] == sigma
