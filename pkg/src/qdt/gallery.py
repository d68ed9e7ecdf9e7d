"""Named instances used in tests, docs and the CLI."""

from __future__ import annotations

import re
from fractions import Fraction

from .grel import Carrier, GRel, char_rel
from .xreal import INF, ZERO


def grid_points(n: int) -> list[Fraction]:
    if n < 2:
        raise ValueError("a grid needs at least 2 points")
    return [Fraction(i, n - 1) for i in range(n)]


def _grid_carrier(n: int) -> Carrier:
    return Carrier(tuple(str(p) for p in grid_points(n)))


def grid_product(n: int) -> GRel:
    """x d y = x(1 - y) on the grid {i/(n-1)}."""
    pts = grid_points(n)
    return GRel.build(_grid_carrier(n), _grid_carrier(n), lambda i, j: pts[i] * (1 - pts[j]))


def grid_truncated(n: int) -> GRel:
    """x q y = (x - y)+ on the grid {i/(n-1)}."""
    pts = grid_points(n)
    return GRel.build(_grid_carrier(n), _grid_carrier(n), lambda i, j: max(pts[i] - pts[j], ZERO))


def chain(n: int) -> GRel:
    """Characteristic table of <= on a chain of n elements."""
    c = Carrier.range(n)
    return char_rel(c, c, lambda i, j: i <= j)


def strict_chain(n: int) -> GRel:
    """Characteristic table of < on a chain of n elements."""
    c = Carrier.range(n)
    return char_rel(c, c, lambda i, j: i < j)


def discrete_metric(n: int) -> GRel:
    c = Carrier.range(n)
    return GRel.build(c, c, lambda i, j: ZERO if i == j else Fraction(1))


def x3nr() -> GRel:
    """Row a is constantly 1 (so a is not reflexive); rows b and c vanish.

    a is the maximum of the directed set {b, c} without being reflexive.
    """
    c = Carrier(("a", "b", "c"))
    one = Fraction(1)
    return GRel.square(c, [[one, one, one], [0, 0, 0], [0, 0, 0]])


def split_tail() -> GRel:
    """A non-distance whose Cauchy tail {b, c} has no upper-ball/lower-hole limit.

    Rows of b and c vanish, so {b, c} is a zero-clique.  Row a sees b at 0 and
    c at 1, which breaks the triangle inequality (a d c = 1 > a d b + b d c)
    and pulls the upper-ball and lower-hole conditions apart.  Being finite,
    it is still max-complete.
    """
    c = Carrier(("a", "b", "c"))
    return GRel.square(c, [[0, 0, 1], [1, 0, 0], [1, 0, 0]])


_PATTERN = re.compile(r"^(G|Q|CHAIN|STRICT|METRIC)(\d+)$")


def names() -> list[str]:
    return ["Gn", "Qn", "CHAINn", "STRICTn", "METRICn", "X3NR", "SPLIT"]


def get(name: str) -> GRel:
    """Look up a gallery instance such as ``G3``, ``Q5``, ``CHAIN4`` or ``X3NR``."""
    key = name.strip().upper()
    if key == "X3NR":
        return x3nr()
    if key == "SPLIT":
        return split_tail()
    m = _PATTERN.match(key)
    if not m:
        raise KeyError(f"unknown gallery instance {name!r}; choose from {', '.join(names())}")
    kind, n = m.group(1), int(m.group(2))
    low = 2 if kind in ("G", "Q") else 1
    if n < low or n > 64:
        raise KeyError(f"gallery size {n} out of range {low}..64 for {kind}n")
    if kind == "G":
        return grid_product(n)
    if kind == "Q":
        return grid_truncated(n)
    if kind == "CHAIN":
        return chain(n)
    if kind == "STRICT":
        return strict_chain(n)
    return discrete_metric(n)


__all__ = [
    "INF",
    "chain",
    "split_tail",
    "discrete_metric",
    "get",
    "grid_points",
    "grid_product",
    "grid_truncated",
    "names",
    "strict_chain",
    "x3nr",
]
