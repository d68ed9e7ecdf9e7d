"""Classification of square tables, reflexivizations, balls, holes and topologies."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .grel import (
    Carrier,
    GRel,
    compose,
    first_excess,
    kan_left,
    kan_right,
    leq,
    restrict as _restrict,
)
from .report import Report
from .xreal import INF, ZERO, ExtReal

BALL_KINDS = ("upper-ball", "lower-ball", "upper-hole", "lower-hole")


def _require_square(d: GRel) -> None:
    if not d.is_square:
        raise ValueError("expected a square relation (source equal to target)")


@dataclass(frozen=True)
class Classification:
    is_distance: bool
    is_reflexive: bool
    is_hemimetric: bool
    is_quasimetric: bool
    is_metric: bool

    def label(self) -> str:
        if self.is_metric:
            return "metric"
        if self.is_quasimetric:
            return "quasimetric"
        if self.is_hemimetric:
            return "hemimetric"
        if self.is_distance:
            return "distance"
        return "relation"

    def to_json(self) -> dict:
        return {
            "is_distance": self.is_distance,
            "is_reflexive": self.is_reflexive,
            "is_hemimetric": self.is_hemimetric,
            "is_quasimetric": self.is_quasimetric,
            "is_metric": self.is_metric,
            "class": self.label(),
        }


def is_distance(d: GRel) -> bool:
    """Triangle inequality d <= d o d."""
    return leq(d, compose(d, d))


def is_reflexive(d: GRel) -> bool:
    return all(d.table[i][i] == 0 for i in range(d.n))


def is_symmetric(d: GRel) -> bool:
    return all(d.table[i][j] == d.table[j][i] for i in range(d.n) for j in range(i))


def classify(d: GRel) -> Classification:
    _require_square(d)
    dist = is_distance(d)
    refl = is_reflexive(d)
    hemi = dist and refl
    antisym = all(
        not (d.table[i][j] == 0 and d.table[j][i] == 0) for i in range(d.n) for j in range(i)
    )
    quasi = hemi and antisym
    return Classification(dist, refl, hemi, quasi, quasi and is_symmetric(d))


def reflexivize_upper(d: GRel) -> GRel:
    """d/d: x y -> sup_z (xdz - ydz)+."""
    _require_square(d)
    return kan_right(d, d)


def reflexivize_lower(d: GRel) -> GRel:
    """d\\d: x y -> sup_z (zdy - zdx)+."""
    _require_square(d)
    return kan_left(d, d)


def check_hemiprop(d: GRel) -> Report:
    """Both reflexivizations are hemimetrics, and they detect the class of d."""
    _require_square(d)
    up, lo = reflexivize_upper(d), reflexivize_lower(d)
    rep = Report("hemiprop")
    rep.add("upper reflexivization is a hemimetric", classify(up).is_hemimetric)
    rep.add("lower reflexivization is a hemimetric", classify(lo).is_hemimetric)
    c = classify(d)
    hemi = [up == d, lo == d, c.is_hemimetric]
    rep.add("hemi: d = upper <=> d = lower <=> hemimetric", len(set(hemi)) == 1, hemi)
    dis = [leq(up, d), leq(lo, d), c.is_distance]
    rep.add("dis: upper <= d <=> lower <= d <=> distance", len(set(dis)) == 1, dis)
    ref = [leq(d, up), leq(d, lo), c.is_reflexive]
    rep.add("ref: d <= upper <=> d <= lower <=> reflexive", len(set(ref)) == 1, ref)
    left = compose(up, d)
    right = compose(d, lo)
    rep.add("d = upper o d", left == d, first_excess(d, left) or first_excess(left, d))
    rep.add("d = d o lower", right == d, first_excess(d, right) or first_excess(right, d))
    if not c.is_distance:
        rep.notes.append(f"d is not a distance; upper <= d fails at {first_excess(up, d)}")
    return rep


def quotient_equivalent(d: GRel) -> tuple[GRel, list[int]]:
    """Merge elements with equal rows and equal columns.

    Returns the quotient table, labelled by the first member of each class,
    and the map from original indices to class indices.
    """
    _require_square(d)
    reps: list[int] = []
    mapping: list[int] = []
    for i in range(d.n):
        for k, r in enumerate(reps):
            if d.table[i] == d.table[r] and d.column(i) == d.column(r):
                mapping.append(k)
                break
        else:
            mapping.append(len(reps))
            reps.append(i)
    return _restrict(d, reps), mapping


def ball(d: GRel, c: int, r: ExtReal, kind: str = "upper") -> frozenset[int]:
    """Upper ball {x : cdx < r} or lower ball {x : xdc < r}."""
    if kind == "upper":
        return frozenset(x for x in range(d.n) if d.table[c][x] < r)
    if kind == "lower":
        return frozenset(x for x in range(d.n) if d.table[x][c] < r)
    raise ValueError(f"unknown ball kind {kind!r}")


def hole(d: GRel, c: int, r: ExtReal, kind: str = "upper") -> frozenset[int]:
    """Upper hole {x : xdc > r} or lower hole {x : cdx > r}."""
    if kind == "upper":
        return frozenset(x for x in range(d.n) if d.table[x][c] > r)
    if kind == "lower":
        return frozenset(x for x in range(d.n) if d.table[c][x] > r)
    raise ValueError(f"unknown hole kind {kind!r}")


def _radii(d: GRel) -> list[ExtReal]:
    """Radii realizing every distinct ball and hole of a finite table.

    Between consecutive table values the sets do not change, so the values
    themselves, midpoints above them and infinity suffice.
    """
    vals = sorted({v for row in d.table for v in row} | {ZERO, INF})
    finite = [v for v in vals if v != INF]
    out = list(vals)
    for a, b in zip(vals, vals[1:]):
        out.append(a + 1 if b == INF else (a + b) / 2)
    if finite:
        out.append(finite[-1] + 1)
    return sorted(set(out))


def subbasis(d: GRel, kinds: Iterable[str]) -> set[frozenset[int]]:
    out: set[frozenset[int]] = set()
    kinds = set(kinds)
    bad = kinds - set(BALL_KINDS)
    if bad:
        raise ValueError(f"unknown kinds {sorted(bad)}")
    radii = _radii(d)
    for c in range(d.n):
        for r in radii:
            if "upper-ball" in kinds:
                out.add(ball(d, c, r, "upper"))
            if "lower-ball" in kinds:
                out.add(ball(d, c, r, "lower"))
            if "upper-hole" in kinds:
                out.add(hole(d, c, r, "upper"))
            if "lower-hole" in kinds:
                out.add(hole(d, c, r, "lower"))
    return out


def _close(sets: set[frozenset[int]], op) -> set[frozenset[int]]:
    closed = set(sets)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                c = op(a, b)
                if c not in closed:
                    closed.add(c)
                    new.append(c)
        frontier = new
    return closed


def generated_topology(d: GRel, kinds: Iterable[str]) -> frozenset[frozenset[int]]:
    """All open sets of the topology generated by the chosen balls and holes."""
    full = frozenset(range(d.n))
    base = _close(subbasis(d, kinds) | {full}, frozenset.intersection)
    opens = _close(base | {frozenset()}, frozenset.union)
    return frozenset(opens)


def restrict(d: GRel, Y: Iterable[int]) -> GRel:
    Y = sorted(set(Y))
    if not Y:
        raise ValueError("restriction needs a nonempty subset")
    return _restrict(d, Y)


def compose_through(d: GRel, Y: Iterable[int], e: GRel) -> GRel:
    """d o Y o e: the composition with the middle variable confined to Y."""
    Y = sorted(set(Y))
    mid = Carrier(tuple(d.target.labels[y] for y in Y))
    left = GRel(d.source, mid, tuple(tuple(row[y] for y in Y) for row in d.table))
    right = GRel(mid, e.target, tuple(e.table[y] for y in Y))
    return compose(left, right)


def check_reflexrestrict(d: GRel, Y: Iterable[int]) -> Report:
    """Reflexivizations commute with restriction when d o Y o d <= d."""
    Y = sorted(set(Y))
    rep = Report("reflexrestrict")
    hyp = is_distance(d) and leq(compose_through(d, Y, d), d)
    rep.add("hypothesis: distance and d o Y o d <= d", hyp)
    if not hyp:
        rep.applicable = False
        rep.notes.append("hypothesis fails; no conclusion claimed")
        return rep
    dy = restrict(d, Y)
    rep.add("upper commutes with restriction", reflexivize_upper(dy) == restrict(reflexivize_upper(d), Y))
    rep.add("lower commutes with restriction", reflexivize_lower(dy) == restrict(reflexivize_lower(d), Y))
    return rep


def _ball_epsilon(d: GRel, x: int, y: int, side: str) -> ExtReal:
    """Least eps > 0 (as an infimum) making every ball of one centre sit in
    the eps-enlarged ball of the other, found by scanning candidate eps and
    radii rather than by the closed formula."""
    vals = sorted({v for row in d.table for v in row if v != INF} | {ZERO})
    diffs = sorted({a - b for a in vals for b in vals if a > b})
    cands = [ZERO] + diffs + [INF]
    finite = [ZERO] + diffs
    gaps = [b - a for a, b in zip(finite, finite[1:])]
    delta = (min(gaps) / 4) if gaps else Fraction(1)
    radii = sorted({ZERO, INF} | set(vals) | {v + delta for v in vals})

    def inside(eps: ExtReal) -> bool:
        for r in radii:
            big = INF if r == INF or eps == INF else r + eps
            if side == "upper":
                small_set, big_set = ball(d, y, r, "upper"), ball(d, x, big, "upper")
            else:
                small_set, big_set = ball(d, x, r, "lower"), ball(d, y, big, "lower")
            if not small_set <= big_set:
                return False
        return True

    # eps itself need not be valid when the infimum is not attained; eps is
    # the infimum when every slightly larger candidate is valid.
    for eps in cands:
        probe = INF if eps == INF else eps + delta
        if inside(probe):
            return eps
    return INF


def ball_upper_reflexivization(d: GRel) -> GRel:
    """The upper reflexivization recovered from inclusions of upper balls."""
    return GRel.build(d.source, d.target, lambda i, j: _ball_epsilon(d, i, j, "upper"))


def ball_lower_reflexivization(d: GRel) -> GRel:
    """The lower reflexivization recovered from inclusions of lower balls."""
    return GRel.build(d.source, d.target, lambda i, j: _ball_epsilon(d, i, j, "lower"))


__all__: Sequence[str] = [
    "Classification",
    "ball",
    "ball_lower_reflexivization",
    "ball_upper_reflexivization",
    "check_hemiprop",
    "check_reflexrestrict",
    "classify",
    "generated_topology",
    "hole",
    "is_distance",
    "is_reflexive",
    "is_symmetric",
    "quotient_equivalent",
    "reflexivize_lower",
    "reflexivize_upper",
    "restrict",
]
