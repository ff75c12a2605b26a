"""Exact scalars of the tropical semiring (Q u {inf}, min, +).

Finite values are :class:`fractions.Fraction`; the absorbing element is the
float ``math.inf``, which compares and adds correctly against fractions.  No
other float ever enters the package.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

INF = math.inf

TropScalar = Union[Fraction, float]


def is_inf(a) -> bool:
    return a == INF


def scalar(x) -> TropScalar:
    """Normalise ints, fractions, strings and ``inf`` to a tropical scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not tropical scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if x == INF:
            return INF
        raise TypeError(f"floating point value {x!r} is not exact")
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a tropical scalar")


def parse_scalar(text: str) -> TropScalar:
    s = text.strip()
    if s.lower() in ("inf", "infinity", "oo", "+inf", "∞"):
        return INF
    if any(c in s for c in ".eE"):
        raise ValueError(f"decimal notation not accepted, use p/q: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}") from None


def format_scalar(a: TropScalar) -> str:
    if a == INF:
        return "inf"
    return str(a)


def t_add(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical sum: the minimum, with INF as identity."""
    return a if a <= b else b


def t_mul(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical product: ordinary sum, INF absorbing."""
    if a == INF or b == INF:
        return INF
    return a + b


def ext_sub(a: TropScalar, b: TropScalar) -> TropScalar:
    """Ordinary difference ``a - b`` with ``inf - b = inf``; ``b`` must be finite."""
    if b == INF:
        raise ValueError("cannot subtract inf")
    if a == INF:
        return INF
    return a - b


def t_sum(values) -> TropScalar:
    out = INF
    for v in values:
        if v < out:
            out = v
    return out
