"""Exact arithmetic on the extended half-line [0, inf].

Finite values are ``fractions.Fraction`` instances in lowest terms and the
top element is ``math.inf``.  Python compares a ``Fraction`` with a float
infinity exactly, so the order needs no wrapper class.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

ExtReal = Union[Fraction, float]

INF: float = math.inf
ZERO = Fraction(0)


def is_inf(a: ExtReal) -> bool:
    return a == INF


def xr(value: object) -> ExtReal:
    """Coerce ``value`` to an extended real, rejecting negatives and NaN."""
    if isinstance(value, bool):
        raise TypeError("booleans are not extended reals")
    if isinstance(value, Fraction):
        out: ExtReal = value
    elif isinstance(value, int):
        out = Fraction(value)
    elif isinstance(value, float):
        if math.isnan(value):
            raise ValueError("NaN is not an extended real")
        if value == INF:
            return INF
        out = Fraction(value)
    elif isinstance(value, str):
        return parse(value)
    else:
        raise TypeError(f"cannot interpret {value!r} as an extended real")
    if out < 0:
        raise ValueError(f"negative value {value!r} is outside [0, inf]")
    return out


def parse(text: str) -> ExtReal:
    """Parse ``"p/q"``, ``"p"`` or ``"inf"``."""
    s = text.strip().lower()
    if s in ("inf", "infinity", "+inf", "∞"):
        return INF
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed extended real {text!r}") from exc
    if value < 0:
        raise ValueError(f"negative value {text!r} is outside [0, inf]")
    return value


def fmt(a: ExtReal) -> str:
    """Canonical text form; inverse of :func:`parse`."""
    if a == INF:
        return "inf"
    return str(Fraction(a))


def add(a: ExtReal, b: ExtReal) -> ExtReal:
    if a == INF or b == INF:
        return INF
    return a + b


def truncated_sub(a: ExtReal, b: ExtReal) -> ExtReal:
    """(a - b) truncated at zero, with inf - inf = 0."""
    if b == INF:
        return ZERO
    if a == INF:
        return INF
    return a - b if a > b else ZERO


def scale_inf(r: ExtReal) -> ExtReal:
    """inf * r, with inf * 0 = 0."""
    return ZERO if r == 0 else INF


def sup(values: Iterable[ExtReal]) -> ExtReal:
    """Supremum with sup of the empty set equal to 0."""
    best: ExtReal = ZERO
    for v in values:
        if v > best:
            best = v
            if best == INF:
                return INF
    return best


def inf(values: Iterable[ExtReal]) -> ExtReal:
    """Infimum with inf of the empty set equal to infinity."""
    best: ExtReal = INF
    for v in values:
        if v < best:
            best = v
            if best == 0:
                return ZERO
    return best


def scale(k: int, a: ExtReal) -> ExtReal:
    """Multiply by a nonnegative integer, with k * inf = inf for k > 0."""
    if k == 0:
        return ZERO
    if a == INF:
        return INF
    return k * a
