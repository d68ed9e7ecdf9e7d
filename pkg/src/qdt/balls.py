"""Formal balls: the distance (x,r) d+ (y,s) = (xdy - r + s)+ on X x [0, inf).

The ball space is infinite, so set-level statements run on a ``BallGrid``
(finitely many radii).  Compositions through the ball space pick their middle
ball from the grid together with the witness radii that realize the infimum
or existence claim in closed form, so every grid comparison below is exact.

Ideals of the strict ball order are handled through their bounds: a directed
family of balls generates the ideal {(y, r) : r > f(y)} with
f(y) = min_{s in S} y d s + a for a zero-clique S and an aperture a, and a
ball (z, s) is its strict maximum iff y d z + s = f(y) for every y.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .grel import Carrier, GRel, compose
from .metric import classify, is_distance, is_reflexive, reflexivize_lower, reflexivize_upper
from .nets import NetProfile, is_cauchy
from .order import is_ball_hole_complete, is_ball_hole_continuous, zero_cliques
from .report import Report
from .xreal import INF, ZERO, ExtReal, add, fmt, parse, truncated_sub, xr

Ball = tuple[int, Fraction]

PASS = "PASS"
GRID_INCONCLUSIVE = "GRID-INCONCLUSIVE"
FAIL = "FAIL"


@dataclass(frozen=True)
class FormalBall:
    element: str
    radius: Fraction

    def __post_init__(self) -> None:
        r = xr(self.radius)
        if r == INF or r < 0:
            raise ValueError(f"a formal ball needs a finite nonnegative radius, got {fmt(r)}")
        object.__setattr__(self, "radius", r)

    def resolve(self, carrier: Carrier) -> Ball:
        return carrier.index(self.element), self.radius

    def __str__(self) -> str:
        return f"({self.element},{fmt(self.radius)})"


def _ball(carrier: Carrier, b: FormalBall | Ball) -> Ball:
    if isinstance(b, FormalBall):
        return b.resolve(carrier)
    x, r = b
    return FormalBall(carrier.labels[x], r).resolve(carrier)


@dataclass(frozen=True)
class BallGrid:
    """The balls (x, r) with x in ``base`` and r in ``radii``."""

    base: Carrier
    radii: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        rs = [xr(r) for r in self.radii]
        if any(r == INF or r < 0 for r in rs):
            raise ValueError("grid radii must be finite and nonnegative")
        if len(set(rs)) != len(rs):
            raise ValueError("grid radii must be distinct")
        if ZERO not in rs:
            raise ValueError("grid radii must include 0")
        object.__setattr__(self, "radii", tuple(sorted(rs)))

    def points(self) -> list[Ball]:
        return [(x, r) for x in range(len(self.base)) for r in self.radii]

    def carrier(self) -> Carrier:
        return Carrier(tuple(f"({self.base.labels[x]},{fmt(r)})" for x, r in self.points()))

    def refine(self, extra: Iterable[ExtReal]) -> "BallGrid":
        new = set(self.radii) | {xr(v) for v in extra if v != INF and v >= 0}
        return BallGrid(self.base, tuple(new))

    def to_json(self) -> dict:
        return {"radii": [fmt(r) for r in self.radii]}

    @classmethod
    def from_json(cls, base: Carrier, data: dict) -> "BallGrid":
        return cls(base, tuple(parse(str(r)) for r in data["radii"]))


def _values(*rels: GRel) -> set[ExtReal]:
    return {v for d in rels for row in d.table for v in row if v != INF}


def witness_grid(*rels: GRel) -> BallGrid:
    """0, every finite table value, a radius T above them all and T + v.

    The top radii let inclusions between ball orders detect every excess of
    the underlying tables."""
    vals = _values(*rels)
    top = 1 + 2 * max(vals | {ZERO})
    radii = {ZERO, top} | vals | {top + v for v in vals}
    return BallGrid(rels[0].source, tuple(radii))


# ---------------------------------------------------------------------------
# Formula-level operations


def _dp(d: GRel, a: Ball, b: Ball) -> ExtReal:
    (x, r), (y, s) = a, b
    v = d.table[x][y]
    if v == INF:
        return INF
    v = v + s - r
    # v - v keeps the zero in the input's number type (int on scaled grids)
    return v if v > 0 else v - v


def _le(d: GRel, a: Ball, b: Ball) -> bool:
    (x, r), (y, s) = a, b
    return d.table[x][y] <= r - s


def _lt(d: GRel, a: Ball, b: Ball) -> bool:
    (x, r), (y, s) = a, b
    return d.table[x][y] < r - s


def fb_distance(d: GRel, a: FormalBall | Ball, b: FormalBall | Ball) -> ExtReal:
    """(x,r) d+ (y,s) = (xdy - r + s)+."""
    return _dp(d, _ball(d.source, a), _ball(d.source, b))


def fb_leq(d: GRel, a: FormalBall | Ball, b: FormalBall | Ball) -> bool:
    """(x,r) <= (y,s) in the ball order: xdy <= r - s."""
    return _le(d, _ball(d.source, a), _ball(d.source, b))


def fb_lt(d: GRel, a: FormalBall | Ball, b: FormalBall | Ball) -> bool:
    """(x,r) < (y,s) in the strict ball order: xdy < r - s."""
    return _lt(d, _ball(d.source, a), _ball(d.source, b))


def plus_table(d: GRel, grid: BallGrid) -> GRel:
    """d+ restricted to the grid."""
    pts = grid.points()
    c = grid.carrier()
    return GRel(c, c, tuple(tuple(_dp(d, a, b) for b in pts) for a in pts))


def recover_table(d: GRel, grid: BallGrid) -> GRel:
    """x y -> least grid radius r with (x,r) <= (y,0); infinite when none."""
    n = d.n
    rows = []
    for x in range(n):
        rows.append(tuple(min((r for r in grid.radii if _le(d, (x, r), (y, ZERO))), default=INF) for y in range(n)))
    return GRel(d.source, d.target, tuple(rows))


def check_xdy(d: GRel, grid: BallGrid | None = None) -> Report:
    """The ball order recovers d, and the strict order is the open ray above it."""
    grid = grid or witness_grid(d)
    rep = Report("xdy")
    rec = recover_table(d, grid)
    bad = [(x, y) for x in range(d.n) for y in range(d.n) if d.table[x][y] in grid.radii and rec.table[x][y] != d.table[x][y]]
    rep.add("least r with (x,r) <= (y,0) is xdy", not bad, bad[:1] or None)
    ray = [
        (x, y)
        for x in range(d.n)
        for y in range(d.n)
        if [r for r in grid.radii if _lt(d, (x, r), (y, ZERO))] != [r for r in grid.radii if r > d.table[x][y]]
    ]
    rep.add("radii with (x,r) < (y,0) are exactly those above xdy", not ray, ray[:1] or None)
    return rep


def aperture(balls: Iterable[FormalBall | Ball]) -> ExtReal:
    """Least radius; infinite for the empty family."""
    return min((b.radius if isinstance(b, FormalBall) else xr(b[1]) for b in balls), default=INF)


# ---------------------------------------------------------------------------
# Functoriality


def _candidates(grid: BallGrid, n: int, extra: Iterable[tuple[int, ExtReal]]) -> list[Ball]:
    out = {(z, t) for z in range(n) for t in grid.radii}
    out |= {(z, t) for z, t in extra if t != INF and t >= 0}
    return sorted(out)


class _IntGrid:
    """Grid radii rescaled to integers."""

    def __init__(self, base: Carrier, radii: Iterable[int]) -> None:
        self.base = base
        self.radii = tuple(sorted(radii))

    def points(self) -> list[tuple[int, int]]:
        return [(x, r) for x in range(len(self.base)) for r in self.radii]


class _Scaled:
    """Tables and radii multiplied by twice the common denominator.

    Every statement checked here is invariant under scaling all values by a
    positive constant, and the factor 2 keeps midpoints of witness radii
    integral, so the heavy loops run on machine integers."""

    def __init__(self, rels: Sequence[GRel], grid: BallGrid) -> None:
        vals = _values(*rels) | set(grid.radii)
        self.factor = 2 * math.lcm(*(Fraction(v).denominator for v in vals))
        k = self.factor
        self.rels = tuple(
            GRel(r.source, r.target, tuple(tuple(v if v == INF else int(v * k) for v in row) for row in r.table))
            for r in rels
        )
        self.grid = _IntGrid(grid.base, (int(t * k) for t in grid.radii))

    def ball(self, b: tuple[int, object]) -> Ball:
        x, r = b
        return x, Fraction(r) / self.factor

    def balls(self, bs: Iterable[tuple[int, object]]) -> tuple[Ball, ...]:
        return tuple(self.ball(b) for b in bs)


def _breakpoints(n: int, extra: Iterable[tuple[int, ExtReal]]) -> list[Ball]:
    """Radius 0 and the given radii for each middle element.  Each composite
    cell is piecewise linear in the middle radius, so its extremes sit there."""
    out = {(z, 0) for z in range(n)}
    out |= {(z, t) for z, t in extra if t != INF and t >= 0}
    return sorted(out)


def _signed_shift(d: GRel, a: Ball, b: Ball, upper: bool) -> ExtReal:
    """max_z (xdz - ydz - r + s)+ (upper) or max_z (zdy - zdx - r + s)+ (lower),
    with an inf - inf term counted as 0 whatever the radii."""
    (x, r), (y, s) = a, b
    best: ExtReal = ZERO
    for z in range(d.n):
        p, q = (d.table[x][z], d.table[y][z]) if upper else (d.table[z][y], d.table[z][x])
        if p == INF:
            if q != INF:
                return INF
        elif q != INF:
            best = max(best, truncated_sub(p + s, q + r))
    return best


def check_bfunc(d: GRel, e: GRel, grid: BallGrid | None = None) -> Report:
    """(d o e)+ = d+ o e+ and the reflexivizations of d+ on grid pairs.

    Middle balls range over the radii where each cell is extremal, so the
    inner inf and sup are exact over all balls.  lower(d+) = (lower d)+ is
    asserted only for a zero diagonal; in general the closed form keeps the
    sign of zdy - zdx before shifting by the radii."""
    if d.source != e.source:
        raise ValueError("check_bfunc needs relations on one carrier")
    sc = _Scaled((d, e), grid or witness_grid(d, e))
    d, e = sc.rels
    pts = sc.grid.points()
    n = d.n
    de = compose(d, e)
    rep = Report("bfunc")
    bad = None
    for a in pts:
        for b in pts:
            (x, r), (y, s) = a, b
            kinks = [(z, add(e.table[z][y], s)) for z in range(n)]
            kinks += [(z, r - d.table[x][z]) for z in range(n) if d.table[x][z] != INF]
            mids = _breakpoints(n, kinks)
            grid_side = min(add(_dp(d, a, c), _dp(e, c, b)) for c in mids)
            if grid_side != _dp(de, a, b):
                bad = sc.balls((a, b))
                break
        if bad:
            break
    rep.add("(d o e)+ = d+ o e+", bad is None, bad)
    for name, rel in (("d", d), ("e", e)):
        lo, up = reflexivize_lower(rel), reflexivize_upper(rel)
        grid_lo: dict = {}
        grid_up: dict = {}
        zeros = _breakpoints(n, [])
        for a in pts:
            for b in pts:
                (x, r), (y, s) = a, b
                # lower: the sup over middle balls is attained at radius 0
                grid_lo[a, b] = max(truncated_sub(_dp(rel, c, b), _dp(rel, c, a)) for c in zeros)
                # upper: attained at radius 0 or any radius >= max(r, s)
                mids = _breakpoints(n, [(z, max(r, s)) for z in range(n)])
                grid_up[a, b] = max(truncated_sub(_dp(rel, a, c), _dp(rel, b, c)) for c in mids)

        def first(table: dict, closed) -> object:
            return next((sc.balls(k) for k, v in table.items() if v != closed(*k)), None)

        w = first(grid_lo, lambda a, b: _signed_shift(rel, a, b, False))
        rep.add(f"lower({name}+) = shifted signed lower {name}", w is None, w)
        w = first(grid_up, lambda a, b: _signed_shift(rel, a, b, True))
        rep.add(f"upper({name}+) = shifted signed upper {name}", w is None, w)
        if is_reflexive(rel):
            w = first(grid_lo, lambda a, b: _dp(lo, a, b))
            rep.add(f"lower({name}+) = (lower {name})+", w is None, w)
            w = first(grid_up, lambda a, b: _dp(up, a, b))
            rep.add(f"upper({name}+) = (upper {name})+", w is None, w)
        else:
            rep.add(f"lower({name}+) = (lower {name})+", None, note="diagonal not zero")
            rep.add(f"upper({name}+) = (upper {name})+", None, note="diagonal not zero")
    return rep


# ---------------------------------------------------------------------------
# Strict ball orders


def _exists(a: Ball, b: Ball, mids: Sequence[Ball], left, right) -> bool:
    return any(left(a, c) and right(c, b) for c in mids)


def _lower_rel(d: GRel, a: Ball, b: Ball, grid: BallGrid) -> bool:
    """a relates to b in the lower reflexivization of the strict order: every
    strict predecessor of a is one of b.  A failure is witnessed at radius
    s + z d y (or just above r + z d x when z d y is infinite)."""
    (x, r), (y, s) = a, b
    extra = [(z, add(d.table[z][y], s)) for z in range(d.n)]
    extra += [(z, add(d.table[z][x], r + 1)) for z in range(d.n)]
    return all(_lt(d, c, b) for c in _candidates(grid, d.n, extra) if _lt(d, c, a))


def _upper_rel(d: GRel, a: Ball, b: Ball, grid: BallGrid) -> bool:
    """a relates to b in the upper reflexivization of the strict order: every
    strict successor of b is one of a.  A failure is witnessed at radius
    max(0, r - x d z)."""
    (x, r), (y, s) = a, b
    extra = [(z, max(ZERO, r - d.table[x][z]) if d.table[x][z] != INF else ZERO) for z in range(d.n)]
    return all(_lt(d, a, c) for c in _candidates(grid, d.n, extra) if _lt(d, b, c))


def zero_column_condition(d: GRel) -> bool:
    """0 o d = 0: every column contains a zero."""
    return all(any(d.table[z][y] == 0 for z in range(d.n)) for y in range(d.n))


def check_bunder_binter(d: GRel, e: GRel | None = None, grid: BallGrid | None = None, seed: int = 0) -> Report:
    """Strict-order composition identities, the two reflexivization criteria,
    and the three interpolation inequalities of formal balls."""
    e = d if e is None else e
    sc = _Scaled((d, e), grid or witness_grid(d, e))
    d, e = sc.rels
    grid = sc.grid
    pts = grid.points()
    n = d.n
    de = compose(d, e)
    rep = Report("bunder-binter")
    mismatch = None
    for a in pts:
        for b in pts:
            (x, r), (y, s) = a, b
            extra = []
            for z in range(n):
                lo_t, hi_t = add(e.table[z][y], s), (r - d.table[x][z]) if d.table[x][z] != INF else None
                extra.append((z, lo_t))
                if hi_t is not None:
                    extra.append((z, hi_t))
                    if lo_t != INF:
                        extra.append((z, (lo_t + hi_t) // 2))
            mids = _candidates(grid, n, extra)
            target = _lt(de, a, b)
            got = (
                _exists(a, b, mids, lambda p, q: _lt(d, p, q), lambda p, q: _lt(e, p, q)),
                _exists(a, b, mids, lambda p, q: _lt(d, p, q), lambda p, q: _le(e, p, q)),
                _exists(a, b, mids, lambda p, q: _le(d, p, q), lambda p, q: _lt(e, p, q)),
            )
            if any(g != target for g in got) and mismatch is None:
                mismatch = {"pair": sc.balls((a, b)), "strict(d o e)": target, "<o<, <o<=, <=o<": got}
    rep.add("strict (d o e)+ = < o < = < o <= = <= o <", mismatch is None, mismatch)

    up_d = reflexivize_upper(d)
    left = all(up_d.table[x][y] <= e.table[x][y] for x in range(n) for y in range(n))
    right = all(_upper_rel(d, a, b, grid) for a in pts for b in pts if _le(e, a, b))
    rep.require("upper(d) <= e <=> upper(strict d+) contains (e+ order)", left, right)

    if is_distance(d) and zero_column_condition(d):
        lo_d = reflexivize_lower(d)
        bad = next(
            (sc.balls((a, b)) for a in pts for b in pts if _lower_rel(d, a, b, grid) != _le(lo_d, a, b)),
            None,
        )
        rep.add("0 o d = 0 => lower(strict d+) = (lower d)+ order", bad is None, bad)
    else:
        rep.add("0 o d = 0 => lower(strict d+) = (lower d)+ order", None, note="hypothesis fails")

    # upper(d+) o strict: infimum over t > s + z d y, reached in the limit at t = s + z d y
    bad = None
    for a in pts:
        for b in pts:
            (x, r), (y, s) = a, b
            v = min(
                (truncated_sub(add(up_d.table[x][z], add(s, d.table[z][y])), r) for z in range(n) if d.table[z][y] != INF),
                default=INF,
            )
            if v > _dp(d, a, b):
                bad = sc.balls((a, b))
    rep.add("upper(d+) o strict <= d+", bad is None, bad)

    lo_d = reflexivize_lower(d)
    rng = random.Random(f"families:{n}:{seed}")
    families = [frozenset()] + [frozenset(rng.sample(pts, k)) for k in (1, 2, 3) for _ in range(12) if len(pts) >= k]
    bad = None
    for Y in families:
        for a in pts:
            x, r = a
            lhs = INF
            for z in range(n):
                t = max([add(d.table[z][y], s) for y, s in Y] + [ZERO])
                if t == INF:
                    continue
                lhs = min(lhs, _dp(lo_d, a, (z, t)))
            rhs = max((_dp(d, a, b) for b in Y), default=ZERO)
            if lhs > rhs and bad is None:
                bad = (sc.ball(a), sorted(sc.balls(Y)))
    rep.add("lower(d+) o (order to subsets) <= d+ on subsets", bad is None, bad)

    bad = None
    for a in pts:
        for b in pts:
            if not _lt(d, a, b):
                continue
            (x, r), (y, s) = a, b
            extra = [(z, add(d.table[z][y], s)) for z in range(n)]
            mids = _candidates(grid, n, extra)
            if not _exists(a, b, mids, lambda p, q: _lt(up_d, p, q), lambda p, q: _le(d, p, q)):
                bad = sc.balls((a, b))
    rep.add("strict(upper d+) o (d+ order) contains strict d+", bad is None, bad)
    return rep


def check_alphatri(d: GRel, grid: BallGrid | None = None, samples: int = 60, seed: int = 0) -> Report:
    """a(Y) <= a(Z) + Z d+_H Y <= a(Z) + Z d+^H Y on random grid families."""
    grid = grid or witness_grid(d)
    pts = grid.points()
    rng = random.Random(f"alphatri:{d.n}:{seed}")
    fams = [frozenset()] + [frozenset(rng.sample(pts, rng.randint(1, min(4, len(pts))))) for _ in range(samples)]
    rep = Report("alphatri")
    bad1 = bad2 = None
    for Y in fams:
        for Z in fams:
            lower = max((min((_dp(d, z, y) for y in Y), default=INF) for z in Z), default=ZERO)
            upper = min((max((_dp(d, z, y) for z in Z), default=ZERO) for y in Y), default=INF)
            aY, aZ = aperture(Y), aperture(Z)
            if aY > add(aZ, lower) and bad1 is None:
                bad1 = (sorted(Y), sorted(Z))
            if add(aZ, lower) > add(aZ, upper) and bad2 is None:
                bad2 = (sorted(Y), sorted(Z))
    rep.add("a(Y) <= a(Z) + Z d+_H Y", bad1 is None, bad1)
    rep.add("a(Z) + Z d+_H Y <= a(Z) + Z d+^H Y", bad2 is None, bad2)
    return rep


# ---------------------------------------------------------------------------
# Completeness and continuity through the strict ball order


def ideal_bound(d: GRel, S: Iterable[int], a: ExtReal) -> tuple[ExtReal, ...]:
    """f(y) = min_{s in S} y d s + a, the radius bound of the ideal generated
    by a Cauchy net through S shifted to aperture a."""
    S = list(S)
    return tuple(add(min(d.table[y][s] for s in S), a) for y in range(d.n))


def is_ideal_max(d: GRel, f: Sequence[ExtReal], ball: Ball) -> bool:
    z, s = ball
    return all(add(d.table[y][z], s) == f[y] for y in range(d.n))


def _strict_complete(d: GRel, grid: BallGrid) -> tuple[bool, object]:
    for S in zero_cliques(d):
        for a in grid.radii:
            f = ideal_bound(d, S, a)
            if not any(is_ideal_max(d, f, b) for b in grid.points()):
                return False, {"clique": d.source.names(S), "aperture": fmt(a)}
    return True, None


def _strict_continuous(d: GRel, grid: BallGrid) -> tuple[bool, object]:
    cliques = zero_cliques(d)
    for b in grid.points():
        if not any(is_ideal_max(d, ideal_bound(d, S, a), b) for S in cliques for a in grid.radii):
            return False, (d.source.labels[b[0]], fmt(b[1]))
    return True, None


def _refined(d: GRel, grid: BallGrid) -> BallGrid:
    vals = _values(d)
    extra = {r + v for r in grid.radii for v in vals} | {r - v for r in grid.radii for v in vals if r >= v}
    return grid.refine(extra)


@dataclass(frozen=True)
class GridVerdict:
    left: bool
    right: bool
    status: str
    witness: object = None


def _grid_compare(left: bool, decide, d: GRel, grid: BallGrid) -> GridVerdict:
    right, witness = decide(d, grid)
    if right == left:
        return GridVerdict(left, right, PASS, witness)
    again, witness2 = decide(d, _refined(d, grid))
    if again == left:
        return GridVerdict(left, right, GRID_INCONCLUSIVE, witness)
    return GridVerdict(left, again, FAIL, witness2)


def check_contdomballs(d: GRel, grid: BallGrid | None = None) -> Report:
    """Ball-hole completeness of d against strict-order max-completeness of the
    ball space, and ball-hole continuity against strict-order max-continuity
    together with 0 o d = 0, decided on a grid with one refinement."""
    grid = grid or witness_grid(d)
    rep = Report("contdomballs")
    if not is_distance(d):
        rep.add("hypothesis: distance", False)
        rep.applicable = False
        return rep
    comp = _grid_compare(is_ball_hole_complete(d, "•◦").holds, _strict_complete, d, grid)
    zc = zero_column_condition(d)

    def cont_side(dd: GRel, g: BallGrid) -> tuple[bool, object]:
        ok, w = _strict_continuous(dd, g)
        return ok and zc, w if not ok else (None if zc else "0 o d != 0")

    cont = _grid_compare(is_ball_hole_continuous(d, "•◦").holds, cont_side, d, grid)
    for name, v in (("completeness", comp), ("continuity", cont)):
        rep.add(f"{name}: {v.status}", v.status != FAIL, v.witness if v.status == FAIL else None,
                note=f"ball-hole {v.left}, strict ball order {v.right}")
    return rep


def strict_ball_domain(d: GRel, grid: BallGrid | None = None) -> dict[str, bool]:
    """The clauses of "the ball space is a strict-order max-domain" at grid
    scale, plus the identification of its lower reflexivization."""
    grid = grid or witness_grid(d)
    pts = grid.points()
    lo_d = reflexivize_lower(d)
    lower = {(a, b): _lower_rel(d, a, b, grid) for a in pts for b in pts}
    return {
        "complete": _strict_complete(d, grid)[0],
        "continuous": _strict_continuous(d, grid)[0],
        "predomain": all(_upper_rel(d, a, b, grid) for (a, b), v in lower.items() if v),
        "lower is (lower d)+ order": all(v == _le(lo_d, a, b) for (a, b), v in lower.items()),
    }


def _profiles(d: GRel, profiles: Sequence[NetProfile]) -> list[NetProfile]:
    return list(profiles) + [NetProfile.of(sorted(S)) for S in zero_cliques(d)]


def check_kw(d: GRel, profiles: Sequence[NetProfile] = (), grid: BallGrid | None = None) -> Report:
    """The ball-hole domain / strict ball domain equivalence, its hemimetric
    specialization, and for hemimetrics the Smyth-completion clause chain."""
    from .grel import opposite
    from .metric import quotient_equivalent
    from .wbd import check_domain

    rep = Report("kw")
    if not is_distance(d):
        rep.add("hypothesis: distance", False)
        rep.applicable = False
        return rep
    grid = grid or witness_grid(d)
    left = check_domain(d, "•◦").domain
    sb = strict_ball_domain(d, grid)
    for k, v in sb.items():
        rep.fact(f"ball space {k}", v)
    right = sb["complete"] and sb["continuous"] and sb["predomain"] and sb["lower is (lower d)+ order"]
    rep.require("ball-hole domain <=> strict ball max-domain with matching lower order", left, right)
    cls = classify(d)
    if not cls.is_hemimetric:
        rep.add("hemimetric clauses", None, note="not a hemimetric")
        return rep
    smyth = is_ball_hole_complete(d, "•◦").holds
    rep.require("Smyth complete <=> strict ball max-domain", smyth, sb["complete"] and sb["continuous"] and sb["predomain"])

    op = opposite(d)
    profs = _profiles(d, profiles)
    c1 = rep.fact(
        "(1) has a Smyth completion (X itself)",
        is_ball_hole_continuous(d, "•◦").holds and is_ball_hole_complete(d, "•◦").holds,
    )
    fam, hemi, haus = _zero_aperture_family(d, grid)
    c3 = rep.fact("(3) upper Hausdorff d+ is a hemimetric on zero-aperture directed families", hemi)
    q, _ = quotient_equivalent(haus)
    c2 = rep.fact(
        "(2) lower Hausdorff d+ on zero-aperture directed families is Smyth complete",
        classify(haus).is_hemimetric and is_ball_hole_complete(q, "•◦").holds,
    )
    c4 = rep.fact(
        "(4) Cauchy nets are op-Cauchy",
        all(all(op.table[a][b] == 0 for a in S for b in S) for S in zero_cliques(d)),
    )
    c5 = rep.fact("(5) Cauchy sequences are op-Cauchy", all(is_cauchy(p, op) for p in profs if is_cauchy(p, d)))
    rep.require("Smyth clauses (1)-(5) agree", c1, c2 and c3 and c4 and c5)
    rep.notes.append(f"{len(fam)} zero-aperture directed grid families")
    return rep


def _zero_aperture_family(d: GRel, grid: BallGrid) -> tuple[list[frozenset[int]], bool, GRel]:
    """Down-sets of the radius-0 grid balls (a directed grid subset with
    aperture 0 has a radius-0 top); returns the family, whether the upper Hausdorff table has zero
    diagonal on it, and the lower Hausdorff table on it."""
    from .hausdorff import hausdorff_lower, hausdorff_upper

    D = plus_table(d, grid)
    pts = grid.points()
    fam: list[frozenset[int]] = []
    for t in range(len(pts)):
        if D.table[t][t] != 0 or pts[t][1] != 0:
            continue
        fam.append(frozenset(i for i in range(len(pts)) if D.table[i][t] == 0))
    fam = list(dict.fromkeys(fam))
    up = hausdorff_upper(D, fam).values
    lo = hausdorff_lower(D, fam).values
    return fam, all(up.table[i][i] == 0 for i in range(len(fam))), lo


__all__ = [
    "BallGrid",
    "FAIL",
    "FormalBall",
    "GRID_INCONCLUSIVE",
    "GridVerdict",
    "PASS",
    "aperture",
    "check_alphatri",
    "check_bfunc",
    "check_bunder_binter",
    "check_contdomballs",
    "check_kw",
    "check_xdy",
    "fb_distance",
    "fb_leq",
    "fb_lt",
    "ideal_bound",
    "is_ideal_max",
    "plus_table",
    "recover_table",
    "strict_ball_domain",
    "witness_grid",
    "zero_column_condition",
]
