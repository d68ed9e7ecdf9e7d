"""Finite generalized relations: tables valued in [0, inf].

Subsets of a carrier are ``frozenset`` objects of element indices.  Labels
only matter at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from .xreal import INF, ZERO, ExtReal, add, fmt, parse, scale_inf, truncated_sub, xr

Subset = frozenset


@dataclass(frozen=True)
class Carrier:
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("carrier labels must be distinct")

    @classmethod
    def of(cls, labels: Iterable[object]) -> "Carrier":
        return cls(tuple(str(x) for x in labels))

    @classmethod
    def range(cls, n: int) -> "Carrier":
        return cls(tuple(str(i) for i in range(n)))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r}") from None

    def subset(self, labels: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index(x) for x in labels)

    def names(self, subset: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in sorted(subset)]

    @property
    def full(self) -> frozenset[int]:
        return frozenset(range(len(self.labels)))


def all_subsets(n: int, nonempty: bool = False) -> list[frozenset[int]]:
    """Every subset of ``range(n)``, ordered by bitmask."""
    start = 1 if nonempty else 0
    return [frozenset(i for i in range(n) if m >> i & 1) for m in range(start, 1 << n)]


def finite_subsets(elements: Iterable[int]) -> Iterator[frozenset[int]]:
    items = sorted(elements)
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def subset_label(carrier: Carrier, subset: Iterable[int]) -> str:
    return "{" + ",".join(carrier.names(subset)) + "}"


def family_carrier(carrier: Carrier, family: Sequence[frozenset[int]]) -> Carrier:
    return Carrier(tuple(subset_label(carrier, s) for s in family))


@dataclass(frozen=True)
class GRel:
    source: Carrier
    target: Carrier
    table: tuple[tuple[ExtReal, ...], ...]

    def __post_init__(self) -> None:
        if len(self.table) != len(self.source):
            raise ValueError("row count does not match the source carrier")
        for row in self.table:
            if len(row) != len(self.target):
                raise ValueError("column count does not match the target carrier")

    @classmethod
    def build(cls, source: Carrier, target: Carrier, f: Callable[[int, int], ExtReal]) -> "GRel":
        return cls(source, target, tuple(tuple(f(i, j) for j in range(len(target))) for i in range(len(source))))

    @classmethod
    def square(cls, carrier: Carrier, rows: Sequence[Sequence[object]]) -> "GRel":
        return cls(carrier, carrier, tuple(tuple(xr(v) for v in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.source)

    @property
    def is_square(self) -> bool:
        return self.source == self.target

    def __call__(self, i: int, j: int) -> ExtReal:
        return self.table[i][j]

    def at(self, x: str, y: str) -> ExtReal:
        return self.table[self.source.index(x)][self.target.index(y)]

    def column(self, j: int) -> tuple[ExtReal, ...]:
        return tuple(row[j] for row in self.table)

    def to_json(self) -> dict:
        if not self.is_square:
            return {
                "source": list(self.source.labels),
                "target": list(self.target.labels),
                "matrix": [[fmt(v) for v in row] for row in self.table],
            }
        return {"carrier": list(self.source.labels), "matrix": [[fmt(v) for v in row] for row in self.table]}

    @classmethod
    def from_json(cls, data: object) -> "GRel":
        if not isinstance(data, dict) or "matrix" not in data:
            raise ValueError("relation JSON needs a 'matrix' field")
        if "carrier" in data:
            source = target = Carrier.of(data["carrier"])
        elif "source" in data and "target" in data:
            source, target = Carrier.of(data["source"]), Carrier.of(data["target"])
        else:
            raise ValueError("relation JSON needs a 'carrier' field")
        matrix = data["matrix"]
        if not isinstance(matrix, list) or len(matrix) != len(source):
            raise ValueError("matrix must have one row per carrier element")
        rows = []
        for row in matrix:
            if not isinstance(row, list) or len(row) != len(target):
                raise ValueError("matrix rows must have one entry per carrier element")
            rows.append(tuple(parse(v) if isinstance(v, str) else xr(v) for v in row))
        return cls(source, target, tuple(rows))

    def pretty(self) -> str:
        cells = [[fmt(v) for v in row] for row in self.table]
        width = max([len(x) for x in self.target.labels] + [len(c) for row in cells for c in row] + [1])
        lw = max([len(x) for x in self.source.labels] + [1])
        lines = [" " * lw + " | " + " ".join(x.rjust(width) for x in self.target.labels)]
        for label, row in zip(self.source.labels, cells):
            lines.append(label.rjust(lw) + " | " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


@dataclass(frozen=True)
class UnaryFn:
    carrier: Carrier
    values: tuple[ExtReal, ...]

    def __call__(self, i: int) -> ExtReal:
        return self.values[i]

    def zero_set(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.values) if v == 0)


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def identity_rel(carrier: Carrier) -> GRel:
    """Characteristic table of equality."""
    return GRel.build(carrier, carrier, lambda i, j: ZERO if i == j else INF)


def zero_rel(source: Carrier, target: Carrier | None = None) -> GRel:
    return GRel.build(source, target or source, lambda i, j: ZERO)


def infty_rel(source: Carrier, target: Carrier | None = None) -> GRel:
    return GRel.build(source, target or source, lambda i, j: INF)


def char_rel(source: Carrier, target: Carrier, related: Callable[[int, int], bool]) -> GRel:
    """Characteristic table: 0 where related, inf elsewhere."""
    return GRel.build(source, target, lambda i, j: ZERO if related(i, j) else INF)


def compose(d: GRel, e: GRel) -> GRel:
    """Min-plus product: x(d o e)y = inf_z (xdz + zey)."""
    _check(d.target == e.source, "carrier mismatch in composition")
    cols = [e.column(j) for j in range(len(e.target))]
    rows = []
    for row in d.table:
        out = []
        for col in cols:
            best: ExtReal = INF
            for a, b in zip(row, col):
                if a == INF or b == INF:
                    continue
                s = a + b
                if s < best:
                    best = s
            out.append(best)
        rows.append(tuple(out))
    return GRel(d.source, e.target, tuple(rows))


def opposite(d: GRel) -> GRel:
    rows = range(len(d.source))
    return GRel(d.target, d.source, tuple(tuple(d.table[i][j] for i in rows) for j in range(len(d.target))))


def _pointwise(d: GRel, e: GRel, op: Callable[[ExtReal, ExtReal], ExtReal]) -> GRel:
    _check(d.source == e.source and d.target == e.target, "carrier mismatch")
    return GRel(d.source, d.target, tuple(tuple(op(a, b) for a, b in zip(r, s)) for r, s in zip(d.table, e.table)))


def join(d: GRel, e: GRel) -> GRel:
    return _pointwise(d, e, max)


def meet(d: GRel, e: GRel) -> GRel:
    return _pointwise(d, e, min)


def symmetrize(d: GRel) -> GRel:
    return join(d, opposite(d))


def scale_rel(k: int, d: GRel) -> GRel:
    from .xreal import scale

    return GRel(d.source, d.target, tuple(tuple(scale(k, v) for v in row) for row in d.table))


def kan_right(d: GRel, e: GRel) -> GRel:
    """d/e with x(d/e)y = sup_z (xdz - yez)+, the least f with d <= f o e."""
    _check(d.target == e.target, "carrier mismatch in right Kan extension")
    rows = []
    for drow in d.table:
        out = []
        for erow in e.table:
            best: ExtReal = ZERO
            for a, b in zip(drow, erow):
                v = truncated_sub(a, b)
                if v > best:
                    best = v
                    if best == INF:
                        break
            out.append(best)
        rows.append(tuple(out))
    return GRel(d.source, e.source, tuple(rows))


def kan_left(e: GRel, d: GRel) -> GRel:
    """e\\d with x(e\\d)y = sup_z (zdy - zex)+."""
    _check(e.source == d.source, "carrier mismatch in left Kan lift")
    return opposite(kan_right(opposite(d), opposite(e)))


def zero_relation(d: GRel) -> GRel:
    """The relation x <=^d y iff xdy = 0, as a characteristic table."""
    return GRel(d.source, d.target, tuple(tuple(scale_inf(v) for v in row) for row in d.table))


def leq(d: GRel, e: GRel) -> bool:
    """Cell-wise d <= e."""
    return first_excess(d, e) is None


def first_excess(d: GRel, e: GRel) -> tuple[int, int] | None:
    """First cell where d exceeds e, or None."""
    _check(d.source == e.source and d.target == e.target, "carrier mismatch")
    for i, (r, s) in enumerate(zip(d.table, e.table)):
        for j, (a, b) in enumerate(zip(r, s)):
            if a > b:
                return (i, j)
    return None


def relation_pairs(d: GRel) -> frozenset[tuple[int, int]]:
    """Zero-set of a table as a set of index pairs."""
    return frozenset((i, j) for i, row in enumerate(d.table) for j, v in enumerate(row) if v == 0)


def uniform_leq(f: UnaryFn | GRel, g: UnaryFn | GRel) -> bool:
    """f precedes g in the uniform preorder.

    On a finite domain (f/g)(r) is constant for r below the least positive
    value of g, where it equals the sup of f over the zero-set of g.  So the
    limit vanishes exactly when f vanishes wherever g does.
    """
    if isinstance(f, GRel) and isinstance(g, GRel):
        _check(f.source == g.source and f.target == g.target, "carrier mismatch")
        return relation_pairs(g) <= relation_pairs(f)
    if isinstance(f, UnaryFn) and isinstance(g, UnaryFn):
        _check(f.carrier == g.carrier, "carrier mismatch")
        return g.zero_set() <= f.zero_set()
    raise TypeError("uniform_leq needs two UnaryFn or two GRel arguments")


def ratio(f: UnaryFn, g: UnaryFn, r: ExtReal) -> ExtReal:
    """(f/g)(r) = sup {f(x) : g(x) <= r}."""
    best: ExtReal = ZERO
    for a, b in zip(f.values, g.values):
        if b <= r and a > best:
            best = a
    return best


def apply_set(V: Iterable[int], d: GRel, mode: str = "sup") -> UnaryFn:
    """Vd (mode ``sup``, a function of the target) or dV (mode ``inf``, of the source)."""
    members = sorted(V)
    if mode == "sup":
        vals = []
        for j in range(len(d.target)):
            best: ExtReal = ZERO
            for v in members:
                if d.table[v][j] > best:
                    best = d.table[v][j]
            vals.append(best)
        return UnaryFn(d.target, tuple(vals))
    if mode == "inf":
        vals = []
        for row in d.table:
            best = INF
            for w in members:
                if row[w] < best:
                    best = row[w]
            vals.append(best)
        return UnaryFn(d.source, tuple(vals))
    raise ValueError(f"unknown mode {mode!r}")


def apply_net(p, d: GRel, mode: str = "limsup", side: str | None = None) -> UnaryFn:
    """Limits of an eventually periodic net against ``d``.

    ``side='left'`` puts the net in the first argument, giving y -> lim x_n d y;
    ``side='right'`` gives x -> lim x d x_n.  The default follows the usual
    pairing: limsup on the left and liminf on the right.  Only the cycle matters.
    """
    if side is None:
        side = "left" if mode == "limsup" else "right"
    pick = max if mode == "limsup" else min
    if mode not in ("limsup", "liminf"):
        raise ValueError(f"unknown mode {mode!r}")
    cyc = [d.source.index(c) if isinstance(c, str) else c for c in p.cycle] if side == "left" else [
        d.target.index(c) if isinstance(c, str) else c for c in p.cycle
    ]
    if side == "left":
        return UnaryFn(d.target, tuple(pick(d.table[s][j] for s in cyc) for j in range(len(d.target))))
    if side == "right":
        return UnaryFn(d.source, tuple(pick(row[s] for s in cyc) for row in d.table))
    raise ValueError(f"unknown side {side!r}")


def restrict(d: GRel, rows: Sequence[int], cols: Sequence[int] | None = None) -> GRel:
    cols = rows if cols is None else cols
    src = Carrier(tuple(d.source.labels[i] for i in rows))
    tgt = Carrier(tuple(d.target.labels[j] for j in cols))
    return GRel(src, tgt, tuple(tuple(d.table[i][j] for j in cols) for i in rows))


def lift_left(d: GRel, family: Sequence[frozenset[int]]) -> GRel:
    """The table (Z, y) -> sup_{z in Z} zdy over a family of source subsets."""
    src = family_carrier(d.source, family)
    rows = tuple(apply_set(Z, d, "sup").values for Z in family)
    return GRel(src, d.target, rows)


def lift_right(d: GRel, family: Sequence[frozenset[int]]) -> GRel:
    """The table (x, Z) -> sup_{z in Z} xdz over a family of target subsets."""
    tgt = family_carrier(d.target, family)
    rows = []
    for row in d.table:
        out = []
        for Z in family:
            best: ExtReal = ZERO
            for z in Z:
                if row[z] > best:
                    best = row[z]
            out.append(best)
        rows.append(tuple(out))
    return GRel(d.source, tgt, tuple(rows))


def _stabilize(step: Callable[[int], GRel], bound: ExtReal) -> GRel:
    """sup_n step(n) for tables whose cells are concave nondecreasing in n.

    A cell that agrees at n and 2n is constant from then on.  A cell that
    exceeds ``bound`` (the largest value a bounded cell could take) is
    unbounded, hence infinite in the limit.
    """
    prev = step(1)
    k = 2
    while True:
        cur = step(k)
        done = True
        rows = []
        for prow, crow in zip(prev.table, cur.table):
            out = []
            for a, b in zip(prow, crow):
                if b > bound:
                    out.append(INF)
                else:
                    out.append(b)
                    if a != b:
                        done = False
            rows.append(tuple(out))
        cur = GRel(cur.source, cur.target, tuple(rows))
        if done:
            return cur
        prev = cur
        k *= 2


def _finite_max(d: GRel) -> ExtReal:
    return max((v for row in d.table for v in row if v != INF), default=ZERO)


def uniformity_compose(e: GRel, d: GRel) -> GRel:
    """sup_n e o (n d), the composition of e with the uniformity of d."""
    return _stabilize(lambda k: compose(e, scale_rel(k, d)), _finite_max(e))


def uniformity_left(d: GRel, e: GRel) -> GRel:
    """sup_n (n d) o e, the composition of the uniformity of d with e."""
    return _stabilize(lambda k: compose(scale_rel(k, d), e), _finite_max(e))


__all__ = [
    "Carrier",
    "GRel",
    "UnaryFn",
    "all_subsets",
    "apply_net",
    "apply_set",
    "char_rel",
    "compose",
    "first_excess",
    "identity_rel",
    "infty_rel",
    "join",
    "kan_left",
    "kan_right",
    "leq",
    "lift_left",
    "lift_right",
    "meet",
    "opposite",
    "relation_pairs",
    "restrict",
    "symmetrize",
    "uniform_leq",
    "uniformity_compose",
    "uniformity_left",
    "zero_rel",
    "zero_relation",
]
