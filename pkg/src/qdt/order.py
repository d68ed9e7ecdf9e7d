"""Directed subsets, upper bounds, completeness, continuity and bases.

Every quantifier over subsets is decided by enumerating the powerset, so the
carrier size is capped (``MAX_SIZE`` by default).

Finite reductions used throughout:

* A subset is directed iff it is nonempty and has a top ``t`` (``Y <=^d t``).
* A Cauchy net eventually stays inside the set of values it takes cofinally,
  and that set is a zero-clique (all pairs, diagonal included, at value 0).
  Its limits are those of any cyclic net through the clique, so nets are
  replaced by zero-cliques.
* Composing with the uniformity of ``d`` amounts to composing with the
  zero-relation of ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .grel import (
    Carrier,
    GRel,
    all_subsets,
    apply_set,
    char_rel,
    compose,
    first_excess,
    join,
    leq,
    lift_left,
    lift_right,
    opposite,
    scale_rel,
    symmetrize,
    uniform_leq,
    uniformity_compose,
    uniformity_left,
    zero_relation,
)
from .metric import is_distance, is_reflexive, reflexivize_lower, reflexivize_upper
from .nets import lower_hole_limits, tail_limits
from .report import Decision, Report
from .xreal import INF, ZERO, ExtReal

MAX_SIZE = 12

CONTRADICTION = "CONTRADICTION"


def _cap(d: GRel, max_size: int | None) -> None:
    cap = MAX_SIZE if max_size is None else max_size
    if d.n > cap:
        raise ValueError(f"carrier of size {d.n} exceeds the powerset cap {cap}")


@dataclass(frozen=True)
class SubsetFamily:
    """A deduplicated family of subsets of one carrier, in first-seen order."""

    carrier: Carrier
    members: tuple[frozenset[int], ...] = field(default=())

    def __post_init__(self) -> None:
        seen: list[frozenset[int]] = []
        n = len(self.carrier)
        for m in self.members:
            m = frozenset(m)
            if any(not 0 <= i < n for i in m):
                raise ValueError("family member outside the carrier")
            if m not in seen:
                seen.append(m)
        object.__setattr__(self, "members", tuple(seen))

    @classmethod
    def powerset(cls, carrier: Carrier, nonempty: bool = False) -> "SubsetFamily":
        return cls(carrier, tuple(all_subsets(len(carrier), nonempty)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def index_of(self, subset: Iterable[int]) -> int:
        return self.members.index(frozenset(subset))

    def labels(self) -> list[list[str]]:
        return [self.carrier.names(m) for m in self.members]


# ---------------------------------------------------------------------------
# Set-valued applications


def row_sup(Y: Iterable[int], d: GRel) -> tuple[ExtReal, ...]:
    """Yd: c -> sup_{y in Y} y d c."""
    return apply_set(Y, d, "sup").values


def col_inf(d: GRel, Y: Iterable[int]) -> tuple[ExtReal, ...]:
    """dY: c -> inf_{y in Y} c d y."""
    return apply_set(Y, d, "inf").values


def set_dist(F: Iterable[int], d: GRel, Y: Iterable[int]) -> ExtReal:
    """(Fd)Y = inf_{y in Y} sup_{f in F} f d y."""
    Y = list(Y)
    F = list(F)
    best: ExtReal = INF
    for y in Y:
        v = max((d.table[f][y] for f in F), default=ZERO)
        if v < best:
            best = v
    return best


def below(Y: Iterable[int], d: GRel, x: int) -> bool:
    """Y <=^d x."""
    return all(d.table[y][x] == 0 for y in Y)


def down_set(d: GRel, x: int) -> frozenset[int]:
    """(<=^d x) = {z : z d x = 0}."""
    return frozenset(z for z in range(d.n) if d.table[z][x] == 0)


# ---------------------------------------------------------------------------
# Directed, final, ideal


def directed_top(Y: Iterable[int], d: GRel) -> int | None:
    """Some t in Y with Y <=^d t, or None."""
    Y = sorted(set(Y))
    for t in Y:
        if below(Y, d, t):
            return t
    return None


def is_directed(Y: Iterable[int], d: GRel) -> bool:
    """Every finite F of Y (the empty one included) has (Fd)Y = 0."""
    return directed_top(Y, d) is not None


def is_directed_by_definition(Y: Iterable[int], d: GRel) -> bool:
    """The defining quantifier over all finite F of Y, without the top shortcut."""
    Y = sorted(set(Y))
    return all(set_dist(F, d, Y) == 0 for F in _subsets_of(Y))


def _subsets_of(Y: Sequence[int]) -> list[frozenset[int]]:
    return [frozenset(Y[i] for i in range(len(Y)) if m >> i & 1) for m in range(1 << len(Y))]


def final_failure(Y: Iterable[int], d: GRel) -> int | None:
    Y = sorted(set(Y))
    for y in Y:
        if not any(d.table[y][z] == 0 for z in Y):
            return y
    return None


def is_final(Y: Iterable[int], d: GRel) -> bool:
    """Every y in Y has some z in Y with y d z = 0."""
    return final_failure(Y, d) is None


def is_ideal(I: Iterable[int], d: GRel) -> bool:
    """For every F: F is inside I exactly when (Fd)I = 0."""
    I = frozenset(I)
    return all((F <= I) == (set_dist(F, d, I) == 0) for F in all_subsets(d.n))


def ideal_closure(Y: Iterable[int], d: GRel) -> frozenset[int]:
    """{x : x d Y = 0} for a final Y."""
    Y = frozenset(Y)
    bad = final_failure(Y, d)
    if bad is not None:
        raise ValueError(f"ideal closure needs a final subset; {d.source.labels[bad]!r} has no zero successor in it")
    col = col_inf(d, Y)
    return frozenset(x for x in range(d.n) if col[x] == 0)


def directed_subsets(d: GRel, within: Iterable[int] | None = None, max_size: int | None = None) -> list[frozenset[int]]:
    _cap(d, max_size)
    pool = sorted(range(d.n) if within is None else set(within))
    return [Y for Y in _subsets_of(pool) if is_directed(Y, d)]


def ideals(d: GRel, max_size: int | None = None) -> list[frozenset[int]]:
    _cap(d, max_size)
    return [I for I in all_subsets(d.n) if is_ideal(I, d)]


# ---------------------------------------------------------------------------
# Suprema and maxima


def d_sup_set(Y: Iterable[int], d: GRel) -> frozenset[int]:
    """x with Y <=^d x and Yd >= xd."""
    Y = frozenset(Y)
    top = row_sup(Y, d)
    return frozenset(
        x for x in range(d.n) if below(Y, d, x) and all(top[c] >= d.table[x][c] for c in range(d.n))
    )


def d_max_set(Y: Iterable[int], d: GRel) -> frozenset[int]:
    """x with Y <=^d x and dY <= dx."""
    Y = frozenset(Y)
    bottom = col_inf(d, Y)
    return frozenset(
        x for x in range(d.n) if below(Y, d, x) and all(bottom[c] <= d.table[c][x] for c in range(d.n))
    )


def _related(r: GRel, a: int, b: int) -> bool:
    return r.table[a][b] == 0


def rel_sup_set(Y: Iterable[int], r: GRel) -> frozenset[int]:
    """Suprema for a characteristic relation: Y inside (r x) and the common
    successors of Y among the successors of x."""
    Y = frozenset(Y)
    n = r.n
    common = frozenset(c for c in range(n) if all(_related(r, y, c) for y in Y))
    return frozenset(
        x
        for x in range(n)
        if all(_related(r, y, x) for y in Y) and common <= frozenset(c for c in range(n) if _related(r, x, c))
    )


def rel_max_set(Y: Iterable[int], r: GRel) -> frozenset[int]:
    """Maxima for a characteristic relation: Y inside (r x) and every
    predecessor of x a predecessor of some y."""
    Y = frozenset(Y)
    n = r.n
    preds = frozenset(c for c in range(n) for y in Y if _related(r, c, y))
    return frozenset(
        x
        for x in range(n)
        if all(_related(r, y, x) for y in Y) and frozenset(c for c in range(n) if _related(r, c, x)) <= preds
    )


def strict_below(d: GRel) -> GRel:
    """x <^d y iff the lower-reflexivization zero-set of y lies in x's zero-row."""
    lo = reflexivize_lower(d)
    n = d.n

    def rel(x: int, y: int) -> bool:
        return all(d.table[x][z] == 0 for z in range(n) if lo.table[y][z] == 0)

    return char_rel(d.source, d.target, rel)


def leq_relation(d: GRel) -> GRel:
    """<=^d as a characteristic table."""
    return zero_relation(d)


# ---------------------------------------------------------------------------
# Completeness


def _first_without(sets: Iterable[frozenset[int]], pick) -> Decision:
    for Y in sets:
        if not pick(Y):
            return Decision(False, Y)
    return Decision(True)


def is_sup_complete(d: GRel, max_size: int | None = None) -> Decision:
    return _first_without(directed_subsets(d, max_size=max_size), lambda Y: d_sup_set(Y, d))


def is_max_complete(d: GRel, max_size: int | None = None) -> Decision:
    return _first_without(directed_subsets(d, max_size=max_size), lambda Y: d_max_set(Y, d))


def is_rel_max_complete(r: GRel, d: GRel, max_size: int | None = None) -> Decision:
    """Every r-directed subset has a d-maximum."""
    return _first_without(directed_subsets(r, max_size=max_size), lambda Y: d_max_set(Y, d))


def zero_cliques(d: GRel, within: Iterable[int] | None = None, max_size: int | None = None) -> list[frozenset[int]]:
    """Nonempty S with s d t = 0 for all s, t in S: the tails of Cauchy nets."""
    _cap(d, max_size)
    pool = sorted(range(d.n) if within is None else set(within))
    return [S for S in _subsets_of(pool) if S and all(d.table[s][t] == 0 for s in S for t in S)]


def is_ball_hole_complete(d: GRel, kind: str = "•◦", max_size: int | None = None) -> Decision:
    """Every Cauchy net (every zero-clique tail) has a limit of the given kind."""
    return _first_without(zero_cliques(d, max_size=max_size), lambda S: tail_limits(d, S, kind))


def is_lower_hole_complete(d: GRel, max_size: int | None = None) -> Decision:
    """Every Cauchy net has a limit for the lower holes alone."""
    return _first_without(zero_cliques(d, max_size=max_size), lambda S: lower_hole_limits(d, S))


# ---------------------------------------------------------------------------
# Continuity


def _every_point(d: GRel, candidates: list[frozenset[int]], hit) -> Decision:
    for x in range(d.n):
        if not any(hit(x, Y) for Y in candidates):
            return Decision(False, x)
    return Decision(True)


def is_max_continuous(d: GRel, basis: Iterable[int] | None = None, max_size: int | None = None) -> Decision:
    """Every x is a d-maximum of some directed subset (of ``basis`` if given).

    The witness of a failure is the first point with no such subset.
    """
    dirs = directed_subsets(d, within=basis, max_size=max_size)
    return _every_point(d, dirs, lambda x, Y: x in d_max_set(Y, d))


def is_rel_max_continuous(r: GRel, d: GRel, max_size: int | None = None) -> Decision:
    """Every x is a d-maximum of some r-directed subset."""
    dirs = directed_subsets(r, max_size=max_size)
    return _every_point(d, dirs, lambda x, Y: x in d_max_set(Y, d))


def is_sup_continuous(d: GRel, max_size: int | None = None) -> Decision:
    dirs = directed_subsets(d, max_size=max_size)
    return _every_point(d, dirs, lambda x, Y: x in d_sup_set(Y, d))


def is_ball_hole_continuous(
    d: GRel, kind: str = "•◦", basis: Iterable[int] | None = None, max_size: int | None = None
) -> Decision:
    """Every x is a limit of the given kind of a Cauchy net (inside ``basis`` if given)."""
    cliques = zero_cliques(d, within=basis, max_size=max_size)
    return _every_point(d, cliques, lambda x, S: x in tail_limits(d, S, kind))


def directed_max_states(d: GRel, within: Iterable[int] | None = None) -> dict[tuple, frozenset[int]]:
    """The distinct (dY, upper bounds of Y) pairs over directed Y, each with one
    representative Y.

    Whether x is a d-maximum of Y depends on Y only through this pair, and
    the pair of Y plus y is a function of the pair of Y and y, so a search
    over pairs replaces the powerset enumeration.  No size cap applies.
    """
    n = d.n
    pool = sorted(range(n) if within is None else set(within))
    zero_row = [frozenset(x for x in range(n) if d.table[y][x] == 0) for y in range(n)]
    states: dict[tuple, frozenset[int]] = {}
    for t in pool:
        if d.table[t][t] != 0:
            continue
        down = [y for y in pool if y != t and d.table[y][t] == 0]
        start = (d.column(t), zero_row[t])
        seen = {start: frozenset([t])}
        stack = [start]
        while stack:
            col, ub = stack.pop()
            rep = seen[(col, ub)]
            for y in down:
                if y in rep:
                    continue
                key = (tuple(min(a, b) for a, b in zip(col, d.column(y))), ub & zero_row[y])
                if key not in seen:
                    seen[key] = rep | {y}
                    stack.append(key)
        for key, rep in seen.items():
            states.setdefault(key, rep)
    return states


def _state_maxima(d: GRel, col: tuple, ub: frozenset[int]) -> frozenset[int]:
    return frozenset(x for x in ub if all(col[c] <= d.table[c][x] for c in range(d.n)))


def max_complete_by_states(d: GRel) -> Decision:
    """Same answer as ``is_max_complete`` without the powerset cap."""
    for (col, ub), rep in directed_max_states(d).items():
        if not _state_maxima(d, col, ub):
            return Decision(False, rep)
    return Decision(True)


def max_continuous_by_states(d: GRel, basis: Iterable[int] | None = None) -> Decision:
    """Same answer as ``is_max_continuous`` without the powerset cap."""
    reached: set[int] = set()
    for col, ub in directed_max_states(d, basis):
        reached |= _state_maxima(d, col, ub)
    missing = [x for x in range(d.n) if x not in reached]
    return Decision(not missing, missing[0] if missing else None)


def finite_family_lift(d: GRel) -> GRel:
    """The table (F, y) -> sup_{f in F} f d y over every subset F, empty one included."""
    return lift_left(d, all_subsets(d.n))


def powerset_lift(d: GRel) -> GRel:
    """The table (x, Z) -> sup_{z in Z} x d z over every subset Z."""
    return lift_right(d, all_subsets(d.n))


def max_continuity_criterion(d: GRel, max_size: int | None = None) -> Decision:
    """Interpolation through the zero-relation: Fd o <=^d <= Fd cell by cell."""
    _cap(d, max_size)
    Fd = finite_family_lift(d)
    left = compose(Fd, leq_relation(d))
    cell = first_excess(left, Fd)
    return Decision(cell is None, None if cell is None else (sorted(_family_member(Fd, cell[0], d)), cell[1]))


def ball_hole_continuity_criterion(d: GRel, max_size: int | None = None) -> Decision:
    """Interpolation through the uniformity: sup_n Fd o (n d) <= Fd cell by cell."""
    _cap(d, max_size)
    Fd = finite_family_lift(d)
    left = uniformity_compose(Fd, d)
    cell = first_excess(left, Fd)
    return Decision(cell is None, None if cell is None else (sorted(_family_member(Fd, cell[0], d)), cell[1]))


def _family_member(Fd: GRel, row: int, d: GRel) -> frozenset[int]:
    return all_subsets(d.n)[row]


# ---------------------------------------------------------------------------
# Bases


def is_basis(B: Iterable[int], d: GRel, kind: str = "max", max_size: int | None = None) -> Decision:
    """B is a basis of the given kind ("max" or "•◦"), decided by enumeration.

    The witness of a failure is the first point not reached from inside B.
    """
    B = frozenset(B)
    if kind == "max":
        return is_max_continuous(d, basis=B, max_size=max_size)
    from .nets import normalize_kind

    if normalize_kind(kind) != "•◦":
        raise ValueError("basis kind must be 'max' or '•◦'")
    return is_ball_hole_continuous(d, basis=B, max_size=max_size)


def _dense(B: frozenset[int], opens: set[frozenset[int]]) -> bool:
    return all(B & O for O in opens if O)


def basis_density_opens(d: GRel, kind: str) -> set[frozenset[int]]:
    """Basic opens for the density test: finite intersections of upper balls
    with lower balls ("•◦" kind) or with down-sets ("max" kind)."""
    from .metric import _close, subbasis

    sub = subbasis(d, ["upper-ball"])
    if kind == "max":
        sub |= {down_set(d, c) for c in range(d.n)}
    else:
        sub |= subbasis(d, ["lower-ball"])
    return _close(sub | {frozenset(range(d.n))}, frozenset.intersection)


def check_basis(B: Iterable[int], d: GRel, kind: str = "max", max_size: int | None = None) -> Report:
    """On a continuous distance, the definition of a basis, its composition
    characterization and its density characterization must agree."""
    B = frozenset(B)
    rep = Report(f"basis[{kind}]")
    direct = is_basis(B, d, kind, max_size)
    if kind == "max":
        cont = is_max_continuous(d, max_size=max_size)
        through = _through(d, B, leq_relation(d))
    else:
        cont = is_ball_hole_continuous(d, max_size=max_size)
        through = _through(d, B, d)
    if not (cont.holds and is_distance(d)):
        rep.add("hypothesis: continuous distance", False)
        rep.applicable = False
        return rep
    ch = uniform_leq(through, d)
    dense = _dense(B, basis_density_opens(d, kind))
    rep.require("definition agrees with d o B o (next) uniformly below d", direct.holds, ch, direct.witness)
    rep.require("definition agrees with density", direct.holds, dense, direct.witness)
    rep.notes.append(f"B is {'a' if direct.holds else 'not a'} basis")
    return rep


def _through(d: GRel, B: frozenset[int], e: GRel) -> GRel:
    """d o B o e with the middle variable confined to B."""
    from .grel import infty_rel
    from .metric import compose_through

    if not B:
        return infty_rel(d.source, e.target)
    return compose_through(d, B, e)


# ---------------------------------------------------------------------------
# Identities for directed subsets and upper bounds


def check_FdY(d: GRel, Y: Iterable[int]) -> Report:
    """For a final Y of a distance: (Fd)Y = F(dY) for all F iff Y is directed."""
    Y = frozenset(Y)
    rep = Report("FdY")
    hyp = is_distance(d) and is_final(Y, d)
    rep.add("hypothesis: distance and Y final", hyp)
    if not hyp:
        rep.applicable = False
        return rep
    col = col_inf(d, Y)
    bad = None
    for F in all_subsets(d.n):
        if set_dist(F, d, Y) != max((col[f] for f in F), default=ZERO):
            bad = F
            break
    rep.require("(Fd)Y = F(dY) for all F <=> directed", bad is None, is_directed_by_definition(Y, d), bad)
    return rep


def check_YdYd(d: GRel, Y: Iterable[int]) -> Report:
    Y = frozenset(Y)
    rep = Report("YdYd")
    hyp = is_distance(d) and is_final(Y, d)
    rep.add("hypothesis: distance and Y final", hyp)
    if not hyp:
        rep.applicable = False
        return rep
    up, lo = reflexivize_upper(d), reflexivize_lower(d)
    a, b = col_inf(up, Y), col_inf(d, Y)
    rep.add("upper Y = dY", a == b, None if a == b else (a, b))
    a, b = row_sup(Y, lo), row_sup(Y, d)
    rep.add("Y lower = Yd", a == b, None if a == b else (a, b))
    return rep


def check_supmax(d: GRel, Y: Iterable[int]) -> Report:
    """Relations between d-suprema, d-maxima and lower suprema of one subset."""
    Y = frozenset(Y)
    rep = Report("supmax=")
    if not is_distance(d):
        rep.add("hypothesis: distance", False)
        rep.applicable = False
        return rep
    lo = reflexivize_lower(d)
    sups, maxes = d_sup_set(Y, d), d_max_set(Y, d)
    yrow = row_sup(Y, d)
    alt = frozenset(x for x in range(d.n) if d.table[x] == yrow and d.table[x][x] == 0)
    rep.add("sup <=> Yd = xd and x <=^d x", sups == alt, None if sups == alt else (sorted(sups), sorted(alt)))
    lsups = d_sup_set(Y, lo)
    rep.add("d-max implies lower-sup", maxes <= lsups, sorted(maxes - lsups) or None)
    if is_final(Y, d):
        col = col_inf(d, Y)
        alt = frozenset(x for x in range(d.n) if d.column(x) == col)
        rep.add("final Y: d-max <=> dY = dx", maxes == alt, None if maxes == alt else (sorted(maxes), sorted(alt)))
        if maxes:
            rep.add("final Y with a d-max: lower-sup implies d-max", lsups <= maxes, sorted(lsups - maxes) or None)
        else:
            rep.add("final Y with a d-max: lower-sup implies d-max", None, note="no d-max")
    else:
        rep.add("final Y: d-max <=> dY = dx", None, note="Y not final")
    return rep


def _rel_final(Y: frozenset[int], r: GRel) -> bool:
    return all(any(r.table[y][z] == 0 for z in Y) for y in Y)


def _char_contains(big: GRel, small: GRel) -> bool:
    """Relation inclusion small inside big for characteristic tables."""
    return leq(big, small)


def check_supmaxrelations(d: GRel, Y: Iterable[int], lt: GRel | None = None) -> Report:
    """d-suprema and d-maxima against suprema and maxima of <=^d and <^d."""
    Y = frozenset(Y)
    rep = Report("supmaxrelations")
    le = leq_relation(d)
    lt = strict_below(d) if lt is None else lt
    sups, maxes = d_sup_set(Y, d), d_max_set(Y, d)
    le_sups = rel_sup_set(Y, le)
    rep.add("d-sup implies <=^d-sup", sups <= le_sups, sorted(sups - le_sups) or None)
    Pd = lift_left(d, all_subsets(d.n))
    hyp = leq(compose(zero_relation(Pd), reflexivize_lower(d)), Pd)
    if hyp:
        rep.add("<=^d-sup implies d-sup (interpolation hypothesis holds)", le_sups <= sups, sorted(le_sups - sups) or None)
    else:
        rep.add("<=^d-sup implies d-sup", None, note="interpolation hypothesis fails")
    dist = is_distance(d)
    lt_maxes = rel_max_set(Y, lt)
    if dist and leq(compose(reflexivize_upper(d), lt), d):
        rep.add("<^d-max implies d-max (interpolation hypothesis holds)", lt_maxes <= maxes, sorted(lt_maxes - maxes) or None)
    else:
        rep.add("<^d-max implies d-max", None, note="hypothesis fails")
    if dist and _rel_final(Y, lt) and _char_contains(compose(strict_below(reflexivize_upper(d)), le), lt):
        rep.add("d-max implies <^d-max (interpolation hypothesis holds)", maxes <= lt_maxes, sorted(maxes - lt_maxes) or None)
    else:
        rep.add("d-max implies <^d-max", None, note="hypothesis fails")
    return rep


def check_directed_nets(d: GRel, Y: Iterable[int]) -> Report:
    """Y is directed iff some net lies below Y and above Y.

    A cyclic net with value set S satisfies (x_n) <=^d Y iff every s has
    s d Y = 0, and Y <=^d (x_n) iff y d s = 0 for all y and s.
    """
    Y = frozenset(Y)
    rep = Report("directedCauchy")
    if not is_distance(d):
        rep.add("hypothesis: distance", False)
        rep.applicable = False
        return rep
    col = col_inf(d, Y)
    found = None
    for S in all_subsets(d.n, nonempty=True):
        if all(col[s] == 0 for s in S) and all(d.table[y][s] == 0 for y in Y for s in S):
            found = S
            break
    rep.require("a net interleaves Y <=> Y directed", found is not None, is_directed_by_definition(Y, d), found)
    if found is not None:
        pc = all(d.table[s][t] == 0 for s in found for t in found)
        rep.add("an interleaving net is pre-Cauchy", pc, None if pc else found)
    return rep


# ---------------------------------------------------------------------------
# Interpolation report


@dataclass
class InterpolationReport:
    """Hypotheses, conclusions and equivalences evaluated on one instance."""

    facts: dict[str, bool] = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    contradictions: list[str] = field(default_factory=list)

    def fact(self, name: str, value: bool) -> bool:
        self.facts[name] = bool(value)
        return bool(value)

    def implication(self, name: str, hyps: Sequence[str], concl: str) -> None:
        held = all(self.facts[h] for h in hyps)
        if held and not self.facts[concl]:
            self.contradictions.append(name)
            self.lines.append(f"{CONTRADICTION} {name}: {' & '.join(hyps)} hold but {concl} fails")
        else:
            state = "applies" if held else "vacuous"
            self.lines.append(f"{name}: {state}")

    def equivalence(self, name: str, members: Sequence[str]) -> None:
        vals = {m: self.facts[m] for m in members}
        if len(set(vals.values())) > 1:
            self.contradictions.append(name)
            self.lines.append(f"{CONTRADICTION} {name}: {vals}")
        else:
            self.lines.append(f"{name}: all {next(iter(vals.values()))}")

    @property
    def ok(self) -> bool:
        return not self.contradictions

    def summary(self) -> str:
        head = [f"{k} = {v}" for k, v in self.facts.items()]
        return "\n".join(head + self.lines)

    def to_json(self) -> dict:
        return {"facts": dict(self.facts), "lines": list(self.lines), "contradictions": list(self.contradictions)}


def default_partner(d: GRel) -> GRel:
    """The least partner allowed by the hypotheses: lower join upper-opposite."""
    return join(reflexivize_lower(d), opposite(reflexivize_upper(d)))


def _pre_cauchy_interleaved(d: GRel, r: GRel) -> bool:
    """For every nonempty S: S is a zero-clique of d iff some r-directed Y
    satisfies Y <=^d S <=^d Y."""
    n = d.n
    dirs = directed_subsets(r)
    for S in all_subsets(n, nonempty=True):
        clique = all(d.table[s][t] == 0 for s in S for t in S)
        inter = any(
            all(d.table[y][s] == 0 for y in Y for s in S) and all(any(d.table[s][y] == 0 for y in Y) for s in S)
            for Y in dirs
        )
        if clique != inter:
            return False
    return True


def interpolation_report(d: GRel, e: GRel | None = None, max_size: int | None = None) -> InterpolationReport:
    """Evaluate the interpolation hypotheses linking relational and
    topological completeness and continuity, and their conclusions.

    A hypothesis that holds while its conclusion fails is a CONTRADICTION.
    Everything here assumes a distance; other inputs only get the facts.
    """
    _cap(d, max_size)
    e = default_partner(d) if e is None else e
    rep = InterpolationReport()
    up, lo = reflexivize_upper(d), reflexivize_lower(d)
    le = leq_relation(d)
    lt = strict_below(d)
    Fd = finite_family_lift(d)
    dP = powerset_lift(d)
    lo_sym = symmetrize(lo)

    dist = rep.fact("distance", is_distance(d))
    rep.fact("partner distance", is_distance(e))
    # topological and relational completeness and continuity
    rep.fact("ball-hole complete", is_ball_hole_complete(d, "•◦").holds)
    rep.fact("hole-hole complete", is_ball_hole_complete(d, "◦◦").holds)
    rep.fact("max complete", is_max_complete(d).holds)
    rep.fact("sup complete", is_sup_complete(d).holds)
    rep.fact("<=^d max complete", is_rel_max_complete(le, d).holds)
    rep.fact("<^d max complete", is_rel_max_complete(lt, d).holds)
    rep.fact("lower-sym lower-hole complete", is_lower_hole_complete(lo_sym).holds)
    rep.fact("partner lower-hole complete", is_lower_hole_complete(e).holds)
    rep.fact("ball-hole continuous", is_ball_hole_continuous(d, "•◦").holds)
    rep.fact("hole-hole continuous", is_ball_hole_continuous(d, "◦◦").holds)
    rep.fact("max continuous", is_max_continuous(d).holds)
    rep.fact("sup continuous", is_sup_continuous(d).holds)
    rep.fact("<=^d max continuous", is_rel_max_continuous(le, d).holds)
    rep.fact("<^d max continuous", is_rel_max_continuous(lt, d).holds)
    rep.fact("<=^d reflexive", is_reflexive(d))
    rep.fact("upper <= lower", leq(up, lo))
    # interpolation hypotheses
    rep.fact("lower o <=^dP unif<= dP", uniform_leq(compose(lo, zero_relation(dP)), dP))
    rep.fact("<=^Fd o upper <= Fd", leq(compose(zero_relation(Fd), up), Fd))
    rep.fact("<=^Fd o lower <= Fd", leq(compose(zero_relation(Fd), lo), Fd))
    rep.fact("e o Phi(upper) unif<= d", uniform_leq(uniformity_compose(e, up), d))
    rep.fact("e o Phi(d) unif<= d", uniform_leq(uniformity_compose(e, d), d))
    rep.fact("lower, upper^op unif<= e", uniform_leq(lo, e) and uniform_leq(opposite(up), e))
    rep.fact("lower-sym o Phi(lower) unif<= d", uniform_leq(uniformity_compose(lo_sym, lo), d))
    rep.fact("d o <=^d unif<= d", uniform_leq(compose(d, le), d))
    rep.fact("d o <=^d <= d", leq(compose(d, le), d))
    # equivalent forms of continuity
    rep.fact("Fd o <=^d <= Fd", max_continuity_criterion(d).holds)
    rep.fact("Fd o Phi(d) <= Fd", ball_hole_continuity_criterion(d).holds)
    rep.fact("Fd o d unif<= Fd", uniform_leq(compose(Fd, d), Fd))
    rep.fact("d o Phi(d) <= d", leq(uniformity_compose(d, d), d))
    rep.fact("<=^Fd inside Phi(Fd) o <=^d", leq(uniformity_left(Fd, le), zero_relation(Fd)))
    rep.fact("down-sets directed", all(is_directed(down_set(d, x), d) for x in range(d.n)))
    rep.fact("lower-directed sets have d-directed twins", _twins(d, lo))
    rep.fact("lower-Cauchy tails have d-Cauchy twins", _tail_twins(d, lo))
    rep.fact("maxcts item 3", rep.facts["d o <=^d <= d"] and rep.facts["<=^Fd inside Phi(Fd) o <=^d"])
    rep.fact("maxcts item 4", rep.facts["d o <=^d unif<= d"] and rep.facts["ball-hole continuous"])
    rep.fact("bhcont item 2.5", rep.facts["Fd o d unif<= Fd"] and rep.facts["d o Phi(d) <= d"])
    # domains
    rep.fact("ball-hole domain", rep.facts["upper <= lower"] and rep.facts["ball-hole continuous"] and rep.facts["ball-hole complete"])
    rep.fact("max domain", rep.facts["upper <= lower"] and rep.facts["max continuous"] and rep.facts["max complete"])
    rep.fact("lower-sym complete max domain", rep.facts["max domain"] and rep.facts["lower-sym lower-hole complete"])
    rep.fact("domains agree", rep.facts["ball-hole domain"] == rep.facts["lower-sym complete max domain"])
    rep.fact(
        "domain interpolation",
        rep.facts["lower o <=^dP unif<= dP"]
        or rep.facts["lower-sym o Phi(lower) unif<= d"]
        or (rep.facts["d o <=^d unif<= d"] and rep.facts["<=^Fd o lower <= Fd"]),
    )
    rep.fact("pre-Cauchy <=> <^d-directed interleaving", _pre_cauchy_interleaved(d, lt))
    rep.fact("pre-Cauchy <=> <=^d-directed interleaving", _pre_cauchy_interleaved(d, le))
    rep.fact("partner hypotheses", rep.facts["lower, upper^op unif<= e"] and rep.facts["partner lower-hole complete"])

    if not dist:
        rep.lines.append("not a distance: implications and equivalences not asserted")
        return rep

    rep.implication("Sc1", ["lower o <=^dP unif<= dP", "<^d max complete"], "ball-hole complete")
    rep.implication(
        "Sc2",
        ["<=^Fd o upper <= Fd", "upper <= lower", "<=^d max complete", "lower-sym lower-hole complete"],
        "ball-hole complete",
    )
    rep.implication(
        "Sc3", ["e o Phi(upper) unif<= d", "partner distance", "partner hypotheses", "max complete"], "ball-hole complete"
    )
    rep.implication(
        "Sc4", ["e o Phi(d) unif<= d", "partner distance", "partner hypotheses", "<=^d max complete"], "ball-hole complete"
    )
    rep.implication("ctscor1", ["ball-hole continuous", "lower o <=^dP unif<= dP"], "<^d max continuous")
    rep.implication("ctscor2", ["ball-hole continuous", "d o <=^d unif<= d"], "max continuous")
    rep.implication(
        "ctscor3", ["ball-hole continuous", "e o Phi(upper) unif<= d", "partner distance", "partner hypotheses"], "max continuous"
    )
    rep.implication(
        "ctscor4", ["ball-hole continuous", "e o Phi(d) unif<= d", "partner distance", "partner hypotheses"], "<=^d max continuous"
    )
    rep.implication("Cauchytodirected", ["lower o <=^dP unif<= dP"], "pre-Cauchy <=> <^d-directed interleaving")
    rep.implication(
        "ded2", ["e o Phi(d) unif<= d", "partner distance", "partner hypotheses"], "pre-Cauchy <=> <=^d-directed interleaving"
    )
    rep.implication("domcor", ["domain interpolation"], "domains agree")
    rep.implication("ball-hole complete implies max complete", ["ball-hole complete"], "max complete")
    rep.implication("hole-hole complete implies sup complete", ["hole-hole complete"], "sup complete")
    rep.implication("max continuous implies ball-hole continuous", ["max continuous"], "ball-hole continuous")
    rep.equivalence("finite: ball-hole complete = max complete", ["ball-hole complete", "max complete"])
    rep.equivalence("finite: hole-hole complete = sup complete", ["hole-hole complete", "sup complete"])
    rep.equivalence(
        "max continuity characterizations",
        ["max continuous", "Fd o <=^d <= Fd", "maxcts item 3", "maxcts item 4", "lower-directed sets have d-directed twins"],
    )
    rep.equivalence(
        "ball-hole continuity characterizations",
        ["ball-hole continuous", "Fd o Phi(d) <= Fd", "bhcont item 2.5", "lower-Cauchy tails have d-Cauchy twins"],
    )
    rep.equivalence("finite: ball-hole continuity criterion = max continuity criterion", ["Fd o Phi(d) <= Fd", "Fd o <=^d <= Fd"])
    rep.equivalence("hole-hole continuity = reflexivity", ["hole-hole continuous", "<=^d reflexive"])
    rep.equivalence("sup continuity = reflexivity", ["sup continuous", "<=^d reflexive"])
    rep.equivalence("down-set characterization", ["<=^Fd inside Phi(Fd) o <=^d", "down-sets directed"])
    return rep


def _twins(d: GRel, lo: GRel) -> bool:
    """Every lower-directed Y has a d-directed Z with Y lower = Z lower and dY = dZ."""
    dd = [(row_sup(Z, lo), col_inf(d, Z)) for Z in directed_subsets(d)]
    for Y in directed_subsets(lo):
        key = (row_sup(Y, lo), col_inf(d, Y))
        if key not in dd:
            return False
    return True


def _tail_twins(d: GRel, lo: GRel) -> bool:
    """Every lower-Cauchy tail has a d-Cauchy tail with the same limsup row
    against the lower reflexivization and the same liminf column against d."""
    dd = [(row_sup(T, lo), col_inf(d, T)) for T in zero_cliques(d)]
    for S in zero_cliques(lo):
        if (row_sup(S, lo), col_inf(d, S)) not in dd:
            return False
    return True


__all__ = [
    "CONTRADICTION",
    "InterpolationReport",
    "MAX_SIZE",
    "SubsetFamily",
    "ball_hole_continuity_criterion",
    "check_FdY",
    "check_YdYd",
    "check_basis",
    "check_directed_nets",
    "check_supmax",
    "check_supmaxrelations",
    "col_inf",
    "d_max_set",
    "d_sup_set",
    "default_partner",
    "directed_max_states",
    "directed_subsets",
    "down_set",
    "ideal_closure",
    "ideals",
    "interpolation_report",
    "is_ball_hole_complete",
    "is_ball_hole_continuous",
    "is_basis",
    "is_directed",
    "is_directed_by_definition",
    "is_final",
    "is_ideal",
    "is_max_complete",
    "is_max_continuous",
    "is_rel_max_complete",
    "is_rel_max_continuous",
    "is_sup_complete",
    "is_sup_continuous",
    "leq_relation",
    "max_complete_by_states",
    "max_continuous_by_states",
    "max_continuity_criterion",
    "rel_max_set",
    "rel_sup_set",
    "row_sup",
    "set_dist",
    "strict_below",
    "zero_cliques",
]
