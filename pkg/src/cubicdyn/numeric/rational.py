"""Exact rational scalars.

The stdlib :class:`fractions.Fraction` already keeps lowest terms with a
positive denominator, so it is used directly as the rational type. This module
only adds parsing and the canonical ``"p/q"`` string form used at every I/O
boundary.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable

from ..errors import ParseError

Q = Fraction


def as_q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: nothing in the exact layers may be rounded.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip().replace("−", "-")
        try:
            if "." in s or "e" in s.lower():
                raise ValueError
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational literal: {x!r}") from None
    raise ParseError(f"not a rational: {x!r}")


def qstr(x) -> str:
    """Canonical string: ``"p/q"`` or ``"p"`` when q = 1."""
    x = as_q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def qlist(xs: Iterable) -> list[str]:
    return [qstr(x) for x in xs]


def parse_qlist(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ParseError(f"empty rational list: {text!r}")
    return tuple(as_q(p) for p in parts)


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    x = as_q(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def quadratic_roots(b, c) -> tuple[Fraction, Fraction] | None:
    """Rational roots of t² + b·t + c, or None when they are irrational."""
    disc = as_q(b) ** 2 - 4 * as_q(c)
    s = rational_sqrt(disc)
    if s is None:
        return None
    return ((-b + s) / 2, (-b - s) / 2)
