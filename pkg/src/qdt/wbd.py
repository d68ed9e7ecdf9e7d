"""Way-below distances, domains and predomains, and their dual characterizations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .grel import GRel, all_subsets, compose, first_excess, leq, lift_left
from .metric import classify, is_distance, is_reflexive, reflexivize_lower, reflexivize_upper
from .nets import NetProfile, is_cauchy, normalize_kind, tail_limits
from .order import (
    col_inf,
    d_max_set,
    d_sup_set,
    directed_subsets,
    is_ball_hole_complete,
    is_ball_hole_continuous,
    is_max_complete,
    is_max_continuous,
    is_sup_complete,
    zero_cliques,
)
from .report import Report
from .xreal import INF, ZERO, ExtReal, truncated_sub


def _set_inf_row(d: GRel, x: int, Z: Iterable[int]) -> ExtReal:
    """x d Z = inf_{w in Z} x d w."""
    return min((d.table[x][w] for w in Z), default=INF)


def _sup_table(d: GRel, pairs: Sequence[tuple[frozenset[int], int]], approach) -> GRel:
    """Cells sup over (Z, z) of (approach(x, Z) - y d z)+, with sup of nothing = 0."""
    n = d.n
    rows = []
    for x in range(n):
        out = []
        for y in range(n):
            best: ExtReal = ZERO
            for Z, z in pairs:
                v = truncated_sub(approach(x, Z), d.table[y][z])
                if v > best:
                    best = v
                    if best == INF:
                        break
            out.append(best)
        rows.append(tuple(out))
    return GRel(d.source, d.target, tuple(rows))


def relational_pairs(d: GRel, mode: str) -> list[tuple[frozenset[int], int]]:
    """Every (Z, z) with Z directed and z a d-sup (mode "sup") or d-max of Z."""
    if mode not in ("sup", "max"):
        raise ValueError(f"unknown mode {mode!r}; use 'sup' or 'max'")
    pick = d_sup_set if mode == "sup" else d_max_set
    return [(Z, z) for Z in directed_subsets(d) for z in sorted(pick(Z, d))]


def way_below_relational(d: GRel, mode: str = "sup") -> GRel:
    """x Rd y = sup {(x d Z - y d z)+ : Z directed, z a d-sup or d-max of Z}."""
    return _sup_table(d, relational_pairs(d, mode), lambda x, Z: _set_inf_row(d, x, Z))


def topological_pairs(
    d: GRel, profiles: Sequence[NetProfile] = (), kind: str = "◦◦", canonical: bool = True
) -> list[tuple[frozenset[int], int]]:
    """(tail, limit) pairs of Cauchy nets.

    With ``canonical`` every zero-clique tail is included, which on a finite
    carrier covers every Cauchy net.  Supplied profiles that are not Cauchy
    are ignored.
    """
    k = normalize_kind(kind)
    tails: list[frozenset[int]] = list(zero_cliques(d)) if canonical else []
    for p in profiles:
        p.check(d.n)
        if is_cauchy(p, d) and p.tail not in tails:
            tails.append(p.tail)
    return [(S, z) for S in tails for z in sorted(tail_limits(d, S, k))]


def way_below_topological(
    d: GRel, profiles: Sequence[NetProfile] = (), kind: str = "◦◦", canonical: bool = True
) -> GRel:
    """x Td y = sup {(x d(z_n) - y d z)+ : (z_n) Cauchy with limit z}.

    ``x d(z_n)`` is the liminf of x d z_n, the min over the tail.  Without the
    canonical family the sup runs over the supplied profiles only, which can
    only under-approximate.
    """
    pairs = topological_pairs(d, profiles, kind, canonical)
    return _sup_table(d, pairs, lambda x, S: _set_inf_row(d, x, S))


# ---------------------------------------------------------------------------
# Domains


@dataclass(frozen=True)
class DomainVerdict:
    predomain: bool
    domain: bool
    witness: Any = None
    reason: str = ""

    def __post_init__(self) -> None:
        if self.domain and not self.predomain:
            raise ValueError("a domain is always a predomain")

    def to_json(self) -> dict:
        from .report import jsonable

        return {"predomain": self.predomain, "domain": self.domain, "witness": jsonable(self.witness), "reason": self.reason}


def check_domain(d: GRel, kind: str = "max") -> DomainVerdict:
    """Predomain: upper <= lower and continuous of the kind; domain adds completeness."""
    if kind == "max":
        cont, comp = is_max_continuous(d), is_max_complete(d)
    else:
        if normalize_kind(kind) != "•◦":
            raise ValueError("domain kind must be 'max' or '•◦'")
        cont, comp = is_ball_hole_continuous(d, "•◦"), is_ball_hole_complete(d, "•◦")
    up, lo = reflexivize_upper(d), reflexivize_lower(d)
    cell = first_excess(up, lo)
    if not cont.holds:
        return DomainVerdict(False, False, cont.witness, f"not continuous at {d.source.labels[cont.witness]}")
    if cell is not None:
        x, y = cell
        return DomainVerdict(
            False,
            False,
            cell,
            f"upper({d.source.labels[x]},{d.target.labels[y]}) = {up.table[x][y]} > lower = {lo.table[x][y]}",
        )
    if not comp.holds:
        return DomainVerdict(True, False, comp.witness, "continuous but not complete")
    return DomainVerdict(True, True)


def sup_continuous_with(d: GRel, e: GRel) -> bool:
    """Every x is an e-sup of some d-directed subset."""
    dirs = directed_subsets(d)
    return all(any(x in d_sup_set(Y, e) for Y in dirs) for x in range(d.n))


def hole_continuous_with(d: GRel, e: GRel) -> bool:
    """Every x is a double-hole e-limit of some d-Cauchy net."""
    cliques = zero_cliques(d)
    return all(any(x in tail_limits(e, S, "◦◦") for S in cliques) for x in range(d.n))


def check_dual_characterization(d: GRel, kind: str = "max") -> Report:
    """Relational side (max) or topological side (•◦) of the duality between
    d-domains and their lower reflexivizations, with e the lower reflexivization."""
    rep = Report(f"domaineqs[{kind}]")
    if not is_distance(d):
        rep.add("hypothesis: distance", False)
        rep.applicable = False
        return rep
    e = reflexivize_lower(d)
    up = reflexivize_upper(d)
    if kind == "max":
        s1 = [
            rep.fact("(1) e sup-complete", is_sup_complete(e).holds),
            rep.fact("(1) every x an e-sup of a d-directed set", sup_continuous_with(d, e)),
            rep.fact("(1) d = sup e", way_below_relational(e, "sup") == d),
        ]
        s2 = [
            rep.fact("(2) d max-complete", is_max_complete(d).holds),
            rep.fact("(2) d max-continuous", is_max_continuous(d).holds),
            rep.fact("(2) upper <= lower", leq(up, e)),
        ]
    else:
        if normalize_kind(kind) != "•◦":
            raise ValueError("kind must be 'max' or '•◦'")
        s1 = [
            rep.fact("(1) e double-hole complete", is_ball_hole_complete(e, "◦◦").holds),
            rep.fact("(1) every x a double-hole e-limit of a d-Cauchy net", hole_continuous_with(d, e)),
            rep.fact("(1) d = double-hole way-below of e", way_below_topological(e, kind="◦◦") == d),
        ]
        s2 = [
            rep.fact("(2) d ball-hole complete", is_ball_hole_complete(d, "•◦").holds),
            rep.fact("(2) d ball-hole continuous", is_ball_hole_continuous(d, "•◦").holds),
            rep.fact("(2) upper <= lower", leq(up, e)),
        ]
    rep.require("(1) <=> (2)", all(s1), all(s2))
    return rep


# ---------------------------------------------------------------------------
# Properties of way-below distances


def check_way_below_props(d: GRel, mode: str = "sup") -> Report:
    """Lower and upper bounds and distance-hood of the relational way-below table."""
    rep = Report(f"Rdprops[{mode}]")
    R = way_below_relational(d, mode)
    pick = d_sup_set if mode == "sup" else d_max_set
    singles = all(x in pick(frozenset([x]), d) and frozenset([x]) in directed_subsets(d) for x in range(d.n))
    if is_reflexive(d) and singles:
        cell = first_excess(d, R)
        rep.add("d <= Rd", cell is None, cell)
    else:
        rep.add("d <= Rd", None, note="hypothesis fails")
    if is_distance(d):
        lo_R, up_R = reflexivize_lower(R), reflexivize_upper(R)
        a, b = first_excess(lo_R, d), first_excess(up_R, d)
        rep.add("lower(Rd) <= d", a is None, a)
        rep.add("upper(Rd) <= d", b is None, b)
    else:
        rep.add("lower(Rd) v upper(Rd) <= d", None, note="not a distance")
    monotone = all(
        all(d.table[c][z] <= col_inf(d, Z)[c] for c in range(d.n)) for Z, z in relational_pairs(d, mode)
    )
    if (classify(d).is_hemimetric and singles) or monotone:
        rep.add("Rd is a distance", is_distance(R))
    else:
        rep.add("Rd is a distance", None, note="hypothesis fails")
    rep.applicable = any(c.holds is not None for c in rep.clauses)
    return rep


def check_topological_way_below_props(d: GRel, kind: str = "◦◦", profiles: Sequence[NetProfile] = ()) -> Report:
    """The same bounds for the topological way-below table.

    Both supported kinds contain the lower holes, so distance-hood is always
    asserted."""
    rep = Report(f"WBprops[{normalize_kind(kind)}]")
    T = way_below_topological(d, profiles, kind)
    if is_reflexive(d):
        cell = first_excess(d, T)
        rep.add("d <= Td", cell is None, cell)
    else:
        rep.add("d <= Td", None, note="diagonal not zero")
    if is_distance(d):
        a, b = first_excess(reflexivize_lower(T), d), first_excess(reflexivize_upper(T), d)
        rep.add("lower(Td) <= d", a is None, a)
        rep.add("upper(Td) <= d", b is None, b)
    else:
        rep.add("lower(Td) v upper(Td) <= d", None, note="not a distance")
    rep.add("Td is a distance", is_distance(T))
    return rep


def is_abstract_basis(r: GRel) -> bool:
    """Interpolation for a characteristic relation: whenever every f in a finite
    F relates to y, some z has F related to z and z related to y."""
    Fr = lift_left(r, all_subsets(r.n))
    return leq(compose(Fr, r), Fr)


def check_abstract_basis(r: GRel) -> Report:
    """For a transitive characteristic relation, abstract basis, max-continuity
    and ball-hole continuity coincide."""
    rep = Report("abstract basis")
    transitive = leq(r, compose(r, r))
    rep.add("hypothesis: transitive relation", transitive)
    if not transitive:
        rep.applicable = False
        return rep
    ab = is_abstract_basis(r)
    rep.require("abstract basis <=> max-continuous", ab, is_max_continuous(r).holds)
    rep.require("abstract basis <=> ball-hole continuous", ab, is_ball_hole_continuous(r, "•◦").holds)
    return rep


__all__ = [
    "DomainVerdict",
    "check_abstract_basis",
    "check_domain",
    "check_dual_characterization",
    "check_topological_way_below_props",
    "check_way_below_props",
    "hole_continuous_with",
    "is_abstract_basis",
    "relational_pairs",
    "sup_continuous_with",
    "topological_pairs",
    "way_below_relational",
    "way_below_topological",
]
