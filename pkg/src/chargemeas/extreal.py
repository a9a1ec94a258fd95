"""Exact nonnegative extended rationals.

Values are plain ``Fraction`` objects or the float ``INF``.  Fractions compare
and add correctly against ``math.inf``, so most arithmetic needs no wrapper;
the helpers here cover parsing, formatting and the two cases Python gets
wrong for us (``inf - inf`` and subtracting infinity from a finite value).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

INF = math.inf

ExtRational = Union[Fraction, float]


def ext(value) -> ExtRational:
    """Coerce ints, strings (``"3/4"``, ``"inf"``) and Fractions."""
    if isinstance(value, float):
        if value == INF:
            return INF
        raise ValueError(f"non-exact float {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if text in ("inf", "+inf", "oo", "∞"):
            return INF
        return Fraction(text)
    return Fraction(value)


def is_inf(value) -> bool:
    return value == INF


def ext_sum(values: Iterable) -> ExtRational:
    total = Fraction(0)
    for v in values:
        if v == INF:
            return INF
        total += v
    return total


def ext_sub(a, b) -> ExtRational:
    if b == INF:
        raise ArithmeticError("subtracting infinity is undefined here")
    if a == INF:
        return INF
    return a - b


def fmt(value) -> str:
    if value is None:
        return "-"
    if value == INF:
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
