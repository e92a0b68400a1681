"""Exact rational helpers: parsing, rendering and integer scaling."""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from math import lcm
from typing import Iterable

from .errors import FormatError


def parse_weight(value, locus=None) -> Fraction:
    """Parse an integer, ``"p/q"`` or finite decimal string exactly.

    Binary floats are refused: they cannot round-trip exactly.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise FormatError(f"weight must be a string, got {value!r}", locus)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise FormatError(f"weight must be a string, got {value!r}", locus)
    text = value.strip()
    if text.lower() in {"nan", "inf", "-inf", "+inf", "infinity"}:
        raise FormatError(f"weight {value!r} is not finite", locus)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"cannot parse weight {value!r}", locus) from None


def fmt(q: Fraction) -> str:
    """Render as ``p/q`` (plain ``p`` for integers)."""
    return str(Fraction(q))


def decimal15(q: Fraction) -> str:
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = 40
        d = Decimal(q.numerator) / Decimal(q.denominator)
        return f"{d:.15g}"


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def scale(values, denom: int) -> list[int]:
    out = []
    for v in values:
        s = Fraction(v) * denom
        assert s.denominator == 1
        out.append(s.numerator)
    return out
