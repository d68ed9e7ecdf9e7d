"""Seeded random instances: distances, hemimetrics, orders and continuous spaces."""

from __future__ import annotations

import random
from fractions import Fraction

from .grel import Carrier, GRel, char_rel, compose, meet
from .xreal import INF, ZERO

KINDS = ("relation", "distance", "hemimetric", "partial-order", "strict-order", "max-continuous", "predomain")

DEFAULT_CAP = 6
DEFAULT_BUDGET = 2000

_VALUES = [Fraction(k, 2) for k in range(1, 5)]


class BudgetExhausted(RuntimeError):
    """Rejection sampling ran out of attempts."""


def _table(rng: random.Random, n: int, p_zero: float, p_inf: float) -> list[list]:
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            u = rng.random()
            if u < p_zero:
                row.append(ZERO)
            elif u < p_zero + p_inf:
                row.append(INF)
            else:
                row.append(rng.choice(_VALUES))
        rows.append(row)
    return rows


def triangle_closure(d: GRel) -> GRel:
    """Largest distance below d: iterate d <- d meet (d o d) to a fixpoint."""
    while True:
        nxt = meet(d, compose(d, d))
        if nxt == d:
            return d
        d = nxt


def random_relation(n: int, rng: random.Random, p_zero: float = 0.3, p_inf: float = 0.05) -> GRel:
    return GRel.square(Carrier.range(n), _table(rng, n, p_zero, p_inf))


def random_distance(n: int, rng: random.Random, p_zero: float = 0.3, p_inf: float = 0.05) -> GRel:
    return triangle_closure(random_relation(n, rng, p_zero, p_inf))


def random_hemimetric(n: int, rng: random.Random, p_zero: float = 0.3, p_inf: float = 0.05) -> GRel:
    rows = _table(rng, n, p_zero, p_inf)
    for i in range(n):
        rows[i][i] = ZERO
    return triangle_closure(GRel.square(Carrier.range(n), rows))


def _random_order_pairs(n: int, rng: random.Random, p: float) -> set[tuple[int, int]]:
    perm = list(range(n))
    rng.shuffle(perm)
    rank = {x: i for i, x in enumerate(perm)}
    pairs = {(a, b) for a in range(n) for b in range(n) if rank[a] < rank[b] and rng.random() < p}
    changed = True
    while changed:
        changed = False
        for a, b in list(pairs):
            for c, e in list(pairs):
                if b == c and (a, e) not in pairs:
                    pairs.add((a, e))
                    changed = True
    return pairs


def random_partial_order(n: int, rng: random.Random, p: float = 0.5) -> GRel:
    pairs = _random_order_pairs(n, rng, p)
    c = Carrier.range(n)
    return char_rel(c, c, lambda i, j: i == j or (i, j) in pairs)


def random_strict_order(n: int, rng: random.Random, p: float = 0.5) -> GRel:
    pairs = _random_order_pairs(n, rng, p)
    c = Carrier.range(n)
    return char_rel(c, c, lambda i, j: (i, j) in pairs)


def generate(kind: str, size: int, seed: int, cap: int = DEFAULT_CAP, budget: int = DEFAULT_BUDGET) -> GRel:
    """A reproducible instance of the given kind; the postcondition is checked."""
    from .metric import classify, is_distance
    from .order import is_max_continuous

    if kind not in KINDS:
        raise ValueError(f"unknown instance kind {kind!r}; choose from {', '.join(KINDS)}")
    if size < 1 or size > cap:
        raise ValueError(f"size {size} outside 1..{cap}")
    rng = random.Random(f"{kind}:{size}:{seed}")
    if kind == "relation":
        return random_relation(size, rng)
    if kind == "distance":
        d = random_distance(size, rng)
        assert is_distance(d)
        return d
    if kind == "hemimetric":
        d = random_hemimetric(size, rng)
        assert classify(d).is_hemimetric
        return d
    if kind == "partial-order":
        return random_partial_order(size, rng)
    if kind == "strict-order":
        return random_strict_order(size, rng)
    from .metric import reflexivize_lower, reflexivize_upper
    from .grel import leq

    for _ in range(budget):
        # zero-heavy tables make directed subsets, hence continuity, likely
        d = random_distance(size, rng, p_zero=rng.choice([0.3, 0.45, 0.6]), p_inf=0.0)
        if not is_max_continuous(d).holds:
            continue
        if kind == "predomain" and not leq(reflexivize_upper(d), reflexivize_lower(d)):
            continue
        return d
    raise BudgetExhausted(f"no {kind} instance of size {size} found within {budget} attempts")


__all__ = [
    "BudgetExhausted",
    "KINDS",
    "generate",
    "random_distance",
    "random_hemimetric",
    "random_partial_order",
    "random_relation",
    "random_strict_order",
    "triangle_closure",
]
