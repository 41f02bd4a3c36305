"""Exact rational helpers on top of fractions.Fraction.

All coordinates in this package are Fractions; floats never enter the core.
Serialisation uses the canonical "p/q" form with q > 0 and gcd(p, q) = 1,
which Fraction maintains for us.
"""

from __future__ import annotations

from fractions import Fraction

Rat = Fraction


def rat(x) -> Fraction:
    """Coerce ints, strings and Fractions to Fraction; reject floats.

    Floats are refused on purpose: a binary float silently changes the set
    being described (1/10 != Fraction(1, 10)).
    """
    if isinstance(x, float):
        raise TypeError("float coordinates are not allowed; pass Fraction, int or 'p/q'")
    return Fraction(x)


def format_rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    if not isinstance(s, str):
        raise TypeError(f"expected 'p/q' string, got {type(s).__name__}")
    return Fraction(s)


def pow2(k: int) -> Fraction:
    """2**k as an exact Fraction, k may be negative."""
    if k >= 0:
        return Fraction(1 << k)
    return Fraction(1, 1 << (-k))
