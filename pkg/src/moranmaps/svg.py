"""Deterministic SVG rendering of interval rows and ratio strips.

Bar coordinates come from exact rationals scaled into the viewport and are
printed with fixed-precision decimals computed by integer arithmetic, so a
given scene always serializes to identical bytes.
"""

from fractions import Fraction

from .config import format_rational

WIDTH = 800
MARGIN = 12
ROW_HEIGHT = 16
ROW_GAP = 8
BAR_FILL = "#35618f"
STRIP_PALETTE = (
    "#c44e52",
    "#55a868",
    "#dd8452",
    "#8172b3",
    "#937860",
    "#da8bc3",
    "#8c8c8c",
    "#ccb974",
)


def _px(x, places=2):
    """Exact fixed-point decimal of a nonnegative Fraction, floor-rounded."""
    scaled = Fraction(x) * 10**places
    n = scaled.numerator // scaled.denominator
    whole, frac = divmod(n, 10**places)
    return f"{whole}.{frac:0{places}d}"


def _bar(x_left, x_right, y, fill):
    x = Fraction(MARGIN) + x_left * (WIDTH - 2 * MARGIN)
    w = (x_right - x_left) * (WIDTH - 2 * MARGIN)
    return (
        f'<rect x="{_px(x)}" y="{y}" width="{_px(w)}" '
        f'height="{ROW_HEIGHT}" fill="{fill}"/>'
    )


def render_svg(approximations, ratios=None):
    """Serialize one row of bars per approximation, deepest last, plus an
    optional ratio strip of (Interval, Fraction) segments with a legend."""
    rows = len(approximations)
    strip_rows = 1 if ratios else 0
    legend_height = 18 * len({p for _, p in ratios}) if ratios else 0
    height = MARGIN * 2 + (rows + strip_rows) * (ROW_HEIGHT + ROW_GAP) + legend_height
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="#ffffff"/>',
    ]
    y = MARGIN
    for approx in approximations:
        for box in approx.intervals:
            parts.append(_bar(box.left, box.right, y, BAR_FILL))
        y += ROW_HEIGHT + ROW_GAP

    if ratios:
        values = sorted({p for _, p in ratios}, reverse=True)
        color = {p: STRIP_PALETTE[i % len(STRIP_PALETTE)] for i, p in enumerate(values)}
        for box, p in ratios:
            parts.append(_bar(box.left, box.right, y, color[p]))
        y += ROW_HEIGHT + ROW_GAP
        for p in values:
            parts.append(
                f'<rect x="{MARGIN}" y="{y}" width="12" height="12" fill="{color[p]}"/>'
            )
            parts.append(
                f'<text x="{MARGIN + 18}" y="{y + 11}" font-family="monospace" '
                f'font-size="12">phi = {format_rational(p)}</text>'
            )
            y += 18
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
