"""Small exact-arithmetic helpers shared across modules."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional


def parse_fraction(text: str) -> Fraction:
    """Parse `p/q` or `p` into an exact Fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_fraction(x: Fraction) -> str:
    """Always `p/q`, normalized (q=1 spelled out so reports stay uniform)."""
    return f"{x.numerator}/{x.denominator}"


def lcm_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        d = v.denominator
        g = _gcd(out, d)
        out = out // g * d
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def smallest_fraction_in_interval(
    lo: Fraction, hi: Fraction, denom_cap: int
) -> Optional[Fraction]:
    """Smallest value in [lo, hi] with denominator <= denom_cap.

    Ties on value cannot occur (values are distinct rationals); among equal
    values the normalized Fraction is unique, which fixes the tie-break by
    denominator then numerator for free.  Returns None when the interval
    contains no admissible fraction.
    """
    if lo > hi:
        return None
    best: Optional[Fraction] = None
    for q in range(1, denom_cap + 1):
        # smallest multiple of 1/q that is >= lo
        p = -((-lo.numerator * q) // lo.denominator)  # ceil(lo * q)
        cand = Fraction(p, q)
        if cand <= hi and (best is None or cand < best):
            best = cand
    return best


def minimal_feasible_denominator(lo: Fraction, hi: Fraction, limit: int = 10**6) -> int:
    """Smallest q such that [lo, hi] contains a fraction with denominator q."""
    for q in range(1, limit + 1):
        p = -((-lo.numerator * q) // lo.denominator)
        if Fraction(p, q) <= hi:
            return q
    raise ValueError("no feasible denominator below limit")
