"""Shared strategies and brute-force oracles for the test suite."""

from __future__ import annotations

from fractions import Fraction
from itertools import chain as ichain
from itertools import combinations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qdt.grel import Carrier, GRel
from qdt.xreal import INF, ZERO

settings.register_profile("qdt", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qdt")

F = Fraction
VALUES = [ZERO, F(1, 2), F(1), F(3, 2), F(2), INF]

ext_reals = st.sampled_from(VALUES) | st.fractions(min_value=0, max_value=5, max_denominator=6)


def tables(n: int, values=ext_reals):
    return st.lists(st.lists(values, min_size=n, max_size=n), min_size=n, max_size=n)


@st.composite
def relations(draw, min_size: int = 1, max_size: int = 4, values=ext_reals):
    n = draw(st.integers(min_size, max_size))
    return GRel.square(Carrier.range(n), draw(tables(n, values)))


@st.composite
def relation_pairs(draw, min_size: int = 1, max_size: int = 3):
    n = draw(st.integers(min_size, max_size))
    c = Carrier.range(n)
    return GRel.square(c, draw(tables(n))), GRel.square(c, draw(tables(n)))


@st.composite
def relation_triples(draw, min_size: int = 1, max_size: int = 3):
    n = draw(st.integers(min_size, max_size))
    c = Carrier.range(n)
    return tuple(GRel.square(c, draw(tables(n))) for _ in range(3))


def closure(d: GRel) -> GRel:
    """Triangle closure by Floyd-Warshall, independent of the library's fixpoint."""
    n = d.n
    t = [list(row) for row in d.table]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if t[i][k] != INF and t[k][j] != INF and t[i][k] + t[k][j] < t[i][j]:
                    t[i][j] = t[i][k] + t[k][j]
    return GRel(d.source, d.target, tuple(tuple(r) for r in t))


@st.composite
def distances(draw, min_size: int = 1, max_size: int = 4):
    return closure(draw(relations(min_size, max_size)))


@st.composite
def hemimetrics(draw, min_size: int = 1, max_size: int = 4):
    d = draw(relations(min_size, max_size))
    rows = [list(r) for r in d.table]
    for i in range(d.n):
        rows[i][i] = ZERO
    return closure(GRel(d.source, d.target, tuple(tuple(r) for r in rows)))


def brute_compose(d: GRel, e: GRel) -> list[list]:
    out = []
    for x in range(len(d.source)):
        row = []
        for y in range(len(e.target)):
            best = INF
            for z in range(len(d.target)):
                a, b = d.table[x][z], e.table[z][y]
                s = INF if INF in (a, b) else a + b
                best = min(best, s)
            row.append(best)
        out.append(row)
    return out


def pos(a, b):
    """(a - b)+ with inf - inf = 0."""
    if a == INF:
        return ZERO if b == INF else INF
    if b == INF:
        return ZERO
    return max(a - b, ZERO)


def subsets(n):
    return [frozenset(c) for c in ichain.from_iterable(combinations(range(n), k) for k in range(n + 1))]


def brute_directed(Y, d):
    Y = frozenset(Y)
    return all(any(all(d.table[f][y] == 0 for f in F) for y in Y) for F in subsets(d.n) if F <= Y)


def row_sup(Y, d, x):
    return max((d.table[y][x] for y in Y), default=0)


def brute_max(Y, d):
    """Y below x, and inf_y c d y <= c d x for every c."""
    n = d.n
    out = set()
    for x in range(n):
        below = all(d.table[y][x] == 0 for y in Y)
        cols = all(min((d.table[c][y] for y in Y), default=INF) <= d.table[c][x] for c in range(n))
        if below and cols:
            out.add(x)
    return frozenset(out)


def brute_sup(Y, d):
    n = d.n
    out = set()
    for x in range(n):
        below = all(d.table[y][x] == 0 for y in Y)
        rows = all(row_sup(Y, d, c) >= d.table[x][c] for c in range(n))
        if below and rows:
            out.add(x)
    return frozenset(out)
