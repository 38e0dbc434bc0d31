"""Exact rational arithmetic helpers.

Every utility, weight and share in this package is a `fractions.Fraction`.
Positive infinity (used for the relationship-imbalance parameter and for
improvement factors over a zero baseline) is `math.inf`, which orders
correctly against Fraction values, so no wrapper type is needed.
"""

from __future__ import annotations

import math
from fractions import Fraction

Numeric = Fraction

INF = math.inf

#: Rational stand-in for sqrt(2) used by the 3-player cyclic instance.
SQRT2_APPROX = Fraction(14142135, 10**7)

#: Rational stand-in for the golden ratio (lower end of the hybrid range).
PHI_APPROX = Fraction(1618, 1000)


class ParseError(ValueError):
    """Malformed instance text; the message names the offending field."""


def parse_rational(text, field="value"):
    """Parse "p/q" or a plain integer string into an exact Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"{field}: expected rational string, got {type(text).__name__}")
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{field}: not a rational: {text!r}") from exc


def format_rational(x):
    """Render a Fraction (or inf) as the wire form "p/q" / "p" / "inf"."""
    if x == INF:
        return "inf"
    frac = Fraction(x)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def at_least_sqrt2_times(x, y):
    """Exact test of ``x >= sqrt(2) * y`` for nonnegative x, y.

    Decided by comparing squares, so no rational approximation of sqrt(2)
    ever enters the comparison.
    """
    if x < 0 or y < 0:
        raise ValueError("squared comparison requires nonnegative operands")
    return x * x >= 2 * y * y


def supermodular_alpha(r, denominator=10**6):
    """Smallest rational p/denominator >= (r + sqrt(r*(r+4))) / 2.

    The exact threshold is irrational for most r; the result is verified by
    exact squared comparison, so the returned rational is the true ceiling
    at the given denominator.
    """
    r = Fraction(r)
    if r < 1:
        raise ValueError("supermodularity degree must be >= 1")
    disc = r * (r + 4)

    def is_upper(p):
        # p/denominator >= (r + sqrt(disc))/2  <=>  (2p/den - r)^2 >= disc
        lhs = 2 * Fraction(p, denominator) - r
        return lhs >= 0 and lhs * lhs >= disc

    guess = math.ceil((float(r) + math.sqrt(float(disc))) / 2 * denominator)
    p = guess
    while not is_upper(p):
        p += 1
    while p > 0 and is_upper(p - 1):
        p -= 1
    return Fraction(p, denominator)
