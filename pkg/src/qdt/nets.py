"""Eventually periodic nets and their limits.

A profile ``prefix + cycle + cycle + ...`` is an N-indexed net.  Every tail
contains each cycle element infinitely often, so limsup and liminf of any
quantity indexed by the net are the max and min over the cycle, and the
prefix never matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .grel import Carrier, GRel, UnaryFn, apply_net
from .metric import is_distance, is_symmetric, reflexivize_lower, reflexivize_upper
from .report import Report
from .xreal import ZERO, ExtReal, truncated_sub

KIND_ALIASES = {
    "••": "••",
    "•◦": "•◦",
    "◦•": "◦•",
    "◦◦": "◦◦",
    "bb": "••",
    "bh": "•◦",
    "hb": "◦•",
    "hh": "◦◦",
}


def normalize_kind(kind: str) -> str:
    """Kinds are written upper-then-lower: "•◦" means upper balls with lower holes."""
    k = kind.replace("o", "◦").replace("∘", "◦").replace("*", "•")
    try:
        return KIND_ALIASES[k if k in KIND_ALIASES else kind]
    except KeyError:
        raise ValueError(f"unknown limit kind {kind!r}; use ••, •◦, ◦•, ◦◦ or bb, bh, hb, hh") from None


@dataclass(frozen=True)
class NetProfile:
    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("a net profile needs a nonempty cycle")

    @classmethod
    def of(cls, cycle: Iterable[int], prefix: Iterable[int] = ()) -> "NetProfile":
        return cls(tuple(prefix), tuple(cycle))

    @classmethod
    def constant(cls, x: int) -> "NetProfile":
        return cls((), (x,))

    @classmethod
    def from_labels(cls, carrier: Carrier, prefix: Sequence[str], cycle: Sequence[str]) -> "NetProfile":
        return cls(tuple(carrier.index(x) for x in prefix), tuple(carrier.index(x) for x in cycle))

    @classmethod
    def from_json(cls, carrier: Carrier, data: dict) -> "NetProfile":
        return cls.from_labels(carrier, data.get("prefix", []), data["cycle"])

    def to_json(self, carrier: Carrier) -> dict:
        return {"prefix": [carrier.labels[i] for i in self.prefix], "cycle": [carrier.labels[i] for i in self.cycle]}

    @property
    def tail(self) -> frozenset[int]:
        return frozenset(self.cycle)

    def check(self, n: int) -> None:
        for x in self.prefix + self.cycle:
            if not 0 <= x < n:
                raise ValueError(f"profile element {x} outside the carrier")


def _tail_zero(d: GRel, S: Iterable[int]) -> bool:
    S = list(S)
    return all(d.table[s][t] == 0 for s in S for t in S)


def is_precauchy(p: NetProfile, d: GRel) -> bool:
    """lim_g limsup_h x_g d x_h = 0: every cycle pair (both orders, and each
    element with itself) has value 0."""
    return _tail_zero(d, p.cycle)


def is_cauchy(p: NetProfile, d: GRel) -> bool:
    """lim_g sup_{g<h} x_g d x_h = 0.  After the prefix every later index
    revisits the whole cycle, so this is the same zero test as pre-Cauchy."""
    cyc = list(p.cycle)
    for pos, s in enumerate(cyc):
        later = cyc[pos + 1 :] + cyc[: pos + 1]
        if any(d.table[s][t] != 0 for t in later):
            return False
    return True


def upper_ball_limits(d: GRel, tail: Iterable[int]) -> frozenset[int]:
    """x with limsup c d x_n <= c d x for all c."""
    T = list(tail)
    n = d.n
    lim = [max(d.table[c][s] for s in T) for c in range(n)]
    return frozenset(x for x in range(n) if all(lim[c] <= d.table[c][x] for c in range(n)))


def lower_ball_limits(d: GRel, tail: Iterable[int]) -> frozenset[int]:
    """x with limsup x_n d c <= x d c for all c."""
    T = list(tail)
    n = d.n
    lim = [max(d.table[s][c] for s in T) for c in range(n)]
    return frozenset(x for x in range(n) if all(lim[c] <= d.table[x][c] for c in range(n)))


def upper_hole_limits(d: GRel, tail: Iterable[int]) -> frozenset[int]:
    """x with liminf x_n d c >= x d c for all c."""
    T = list(tail)
    n = d.n
    lim = [min(d.table[s][c] for s in T) for c in range(n)]
    return frozenset(x for x in range(n) if all(lim[c] >= d.table[x][c] for c in range(n)))


def lower_hole_limits(d: GRel, tail: Iterable[int]) -> frozenset[int]:
    """x with liminf c d x_n >= c d x for all c."""
    T = list(tail)
    n = d.n
    lim = [min(d.table[c][s] for s in T) for c in range(n)]
    return frozenset(x for x in range(n) if all(lim[c] >= d.table[c][x] for c in range(n)))


def tail_limits(d: GRel, tail: Iterable[int], kind: str) -> frozenset[int]:
    """Limits of any net whose cofinal values are exactly ``tail``."""
    k = normalize_kind(kind)
    T = list(tail)
    upper = upper_ball_limits(d, T) if k[0] == "•" else upper_hole_limits(d, T)
    lower = lower_ball_limits(d, T) if k[1] == "•" else lower_hole_limits(d, T)
    return upper & lower


def limit_points(p: NetProfile, d: GRel, kind: str) -> frozenset[int]:
    """Limits of a profile in the topology of the given kind (upper, lower)."""
    return tail_limits(d, p.cycle, kind)


def convergence_sets(p: NetProfile, d: GRel) -> dict[str, frozenset[int]]:
    """The four single-family convergence sets."""
    T = p.cycle
    return {
        "upper-ball": upper_ball_limits(d, T),
        "lower-ball": lower_ball_limits(d, T),
        "upper-hole": upper_hole_limits(d, T),
        "lower-hole": lower_hole_limits(d, T),
    }


def _tends_to_zero(d: GRel, p: NetProfile, x: int) -> bool:
    """x_n d x -> 0."""
    return all(d.table[s][x] == 0 for s in p.cycle)


def check_symCauchy(p: NetProfile, d: GRel) -> Report:
    rep = Report("symCauchy")
    hyp = is_symmetric(d) and is_distance(d)
    rep.add("hypothesis: symmetric distance", hyp)
    if not hyp:
        rep.applicable = False
        return rep
    rep.require("Cauchy <=> pre-Cauchy", is_cauchy(p, d), is_precauchy(p, d))
    return rep


def _same_on_cycle(values_by_pos: list[tuple[ExtReal, ...]]) -> bool:
    return all(v == values_by_pos[0] for v in values_by_pos)


def climeq_right(p: NetProfile, d: GRel) -> UnaryFn:
    """y -> sup_z (z d y - z d(x_n))+ with d(x_n) the liminf column."""
    col = apply_net(p, d, "liminf", "right").values
    return UnaryFn(
        d.target,
        tuple(max((truncated_sub(d.table[z][y], col[z]) for z in range(d.n)), default=ZERO) for y in range(d.n)),
    )


def check_clim(p: NetProfile, d: GRel) -> Report:
    """Pointwise convergence of rows and columns along pre-Cauchy profiles."""
    rep = Report("Clim")
    up, lo = reflexivize_upper(d), reflexivize_lower(d)
    any_applicable = False
    if is_precauchy(p, up):
        any_applicable = True
        rep.add("rows x_n d converge", _same_on_cycle([d.table[s] for s in p.cycle]))
    else:
        rep.add("rows x_n d converge", None, note="not upper-pre-Cauchy")
    if is_precauchy(p, lo):
        any_applicable = True
        rep.add("columns d x_n converge", _same_on_cycle([d.column(s) for s in p.cycle]))
        left = apply_net(p, lo, "limsup", "left")
        right = climeq_right(p, d)
        rep.add("(x_n) lower(y) = sup_z (zdy - z d(x_n))+", left == right, None if left == right else (left.values, right.values))
    else:
        rep.add("columns d x_n converge", None, note="not lower-pre-Cauchy")
    if is_precauchy(p, d) and is_distance(d):
        any_applicable = True
        a = apply_net(p, d, "liminf", "right") == apply_net(p, up, "liminf", "right")
        b = apply_net(p, d, "limsup", "left") == apply_net(p, lo, "limsup", "left")
        rep.add("d(x_n) = upper(x_n)", a)
        rep.add("(x_n)d = (x_n)lower", b)
    else:
        rep.add("d(x_n) = upper(x_n) and (x_n)d = (x_n)lower", None, note="not a pre-Cauchy profile of a distance")
    rep.applicable = any_applicable
    return rep


def check_convchar(p: NetProfile, d: GRel) -> Report:
    """Sufficient conditions for ball and hole convergence, for every x."""
    rep = Report("convchar")
    up, lo = reflexivize_upper(d), reflexivize_lower(d)
    sets = convergence_sets(p, d)
    bad_ac = [x for x in range(d.n) if _tends_to_zero(lo, p, x) and x not in sets["lower-hole"]]
    bad_ab = [x for x in range(d.n) if _tends_to_zero(up, p, x) and x not in sets["lower-ball"]]
    bad_le = [
        x for x in range(d.n) if x in sets["lower-ball"] and d.table[x][x] == 0 and not _tends_to_zero(d, p, x)
    ]
    rep.add("x_n lower x -> 0 implies lower-hole convergence", not bad_ac, bad_ac or None)
    rep.add("x_n upper x -> 0 implies lower-ball convergence", not bad_ab, bad_ab or None)
    rep.add("lower-ball convergence to reflexive x implies x_n d x -> 0", not bad_le, bad_le or None)
    return rep


def sub_profiles(p: NetProfile) -> list[NetProfile]:
    """Subnets up to tail: any nonempty set of cycle values recurring forever."""
    vals = sorted(set(p.cycle))
    out = []
    for k in range(1, len(vals) + 1):
        for combo in combinations(vals, k):
            out.append(NetProfile((), combo))
    return out


def check_dlimits(p: NetProfile, d: GRel) -> Report:
    """Limits along pre-Cauchy profiles are detected by rows and columns."""
    rep = Report("dlimits")
    up, lo = reflexivize_upper(d), reflexivize_lower(d)
    n = d.n
    rows = apply_net(p, d, "limsup", "left").values
    cols = apply_net(p, d, "liminf", "right").values
    applicable = False
    if is_precauchy(p, up):
        applicable = True
        topo = limit_points(p, d, "◦•")
        direct = frozenset(x for x in range(n) if d.table[x] == rows)
        rep.add("upper-hole/lower-ball limits = {x : (x_n)d = xd}", topo == direct, None if topo == direct else (sorted(topo), sorted(direct)))
        subs = all(limit_points(q, d, "◦•") == topo for q in sub_profiles(p))
        rep.add("subnets share the upper-hole/lower-ball limits", subs)
    if is_precauchy(p, lo):
        applicable = True
        topo = limit_points(p, d, "•◦")
        direct = frozenset(x for x in range(n) if d.column(x) == cols)
        rep.add("upper-ball/lower-hole limits = {x : d(x_n) = dx}", topo == direct, None if topo == direct else (sorted(topo), sorted(direct)))
        subs = all(limit_points(q, d, "•◦") == topo for q in sub_profiles(p))
        rep.add("subnets share the upper-ball/lower-hole limits", subs)
        lo_rows = apply_net(p, lo, "limsup", "left").values
        bad = [x for x in topo if lo.table[x] != lo_rows]
        rep.add("such limits x satisfy (x_n)lower = x lower", not bad, bad or None)
        if topo:
            cand = frozenset(x for x in range(n) if lo.table[x] == lo_rows)
            rep.add("once a limit exists, (x_n)lower = x lower suffices", cand <= topo, sorted(cand - topo) or None)
    if is_precauchy(p, d) and is_distance(d):
        applicable = True
        topo = lower_hole_limits(d, p.cycle)
        direct = frozenset(x for x in range(n) if _tends_to_zero(d, p, x))
        rep.add("lower-hole limits = {x : x_n d x -> 0}", topo == direct, None if topo == direct else (sorted(topo), sorted(direct)))
        hh = limit_points(p, d, "◦◦")
        hb = frozenset(x for x in limit_points(p, d, "◦•") if d.table[x][x] == 0)
        rep.add("double-hole limits = reflexive upper-hole/lower-ball limits", hh == hb, None if hh == hb else (sorted(hh), sorted(hb)))
    rep.applicable = applicable
    return rep


__all__ = [
    "NetProfile",
    "check_clim",
    "check_convchar",
    "check_dlimits",
    "check_symCauchy",
    "convergence_sets",
    "is_cauchy",
    "is_precauchy",
    "limit_points",
    "normalize_kind",
    "sub_profiles",
    "tail_limits",
]
