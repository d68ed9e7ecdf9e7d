"""Hausdorff distances on subsets, the completion of a predomain by directed
subsets, and the ideal completion of a basis."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .grel import Carrier, GRel, all_subsets, compose, family_carrier, first_excess, leq, scale_rel
from .metric import is_distance, quotient_equivalent, reflexivize_lower, reflexivize_upper
from .nets import NetProfile, is_cauchy, is_precauchy, sub_profiles
from .order import (
    SubsetFamily,
    d_max_set,
    d_sup_set,
    directed_subsets,
    down_set,
    ideals,
    is_basis,
    is_directed,
    is_final,
    is_max_complete,
    max_complete_by_states,
    max_continuous_by_states,
    set_dist,
    zero_cliques,
)
from .report import Report
from .xreal import INF, ZERO, ExtReal

EXHAUSTIVE_LIMIT = 8
SAMPLE_SIZE = 64


@dataclass(frozen=True)
class PowersetRel:
    """A Hausdorff table over a family of subsets of ``base``.

    ``kind`` is "upper" for Y d^H Z = inf_z sup_y y d z and "lower" for
    Y d_H Z = sup_y inf_z y d z.  ``exhaustive`` is False when the family was
    sampled rather than the full powerset.
    """

    base: Carrier
    family: SubsetFamily
    values: GRel
    kind: str
    exhaustive: bool = True

    def index(self, subset: Iterable[int]) -> int:
        return self.family.index_of(subset)

    def value(self, Y: Iterable[int], Z: Iterable[int]) -> ExtReal:
        return self.values.table[self.index(Y)][self.index(Z)]

    def consistent_with(self, d: GRel) -> bool:
        """The stored table equals a fresh recomputation from d."""
        return _table(d, self.family, self.kind) == self.values

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "exhaustive": self.exhaustive,
            "members": self.family.labels(),
            "table": self.values.to_json(),
        }


def _upper(d: GRel, Y: frozenset[int], Z: frozenset[int]) -> ExtReal:
    return set_dist(Y, d, Z)


def _lower(d: GRel, Y: frozenset[int], Z: frozenset[int]) -> ExtReal:
    best: ExtReal = ZERO
    for y in Y:
        v = min((d.table[y][z] for z in Z), default=INF)
        if v > best:
            best = v
    return best


def _table(d: GRel, family: SubsetFamily, kind: str) -> GRel:
    f = {"upper": _upper, "lower": _lower}.get(kind)
    if f is None:
        raise ValueError(f"unknown Hausdorff kind {kind!r}; use 'upper' or 'lower'")
    carrier = family_carrier(d.source, family.members)
    rows = tuple(tuple(f(d, Y, Z) for Z in family) for Y in family)
    return GRel(carrier, carrier, rows)


def sampled_family(carrier: Carrier, seed: int = 0) -> SubsetFamily:
    """A seeded sample of distinct subsets containing the empty set, the
    singletons and the whole carrier."""
    n = len(carrier)
    rng = random.Random(f"family:{n}:{seed}")
    members = list(dict.fromkeys([frozenset(), frozenset(range(n))] + [frozenset([i]) for i in range(n)]))
    target = min(SAMPLE_SIZE, 1 << n)
    seen = set(members)
    while len(members) < target:
        Y = frozenset(i for i in range(n) if rng.random() < 0.5)
        if Y not in seen:
            seen.add(Y)
            members.append(Y)
    return SubsetFamily(carrier, tuple(members))


def default_family(carrier: Carrier, seed: int = 0) -> tuple[SubsetFamily, bool]:
    """The full powerset up to ``EXHAUSTIVE_LIMIT`` points, else a sample."""
    if len(carrier) <= EXHAUSTIVE_LIMIT:
        return SubsetFamily.powerset(carrier), True
    return sampled_family(carrier, seed), False


def _build(d: GRel, kind: str, family: SubsetFamily | Sequence[frozenset[int]] | None) -> PowersetRel:
    if not d.is_square:
        raise ValueError("Hausdorff tables need a square relation")
    exhaustive = True
    if family is None:
        family, exhaustive = default_family(d.source)
    elif not isinstance(family, SubsetFamily):
        family = SubsetFamily(d.source, tuple(family))
        exhaustive = len(family) == 1 << d.n
    return PowersetRel(d.source, family, _table(d, family, kind), kind, exhaustive)


def hausdorff_upper(d: GRel, family: SubsetFamily | Sequence[frozenset[int]] | None = None) -> PowersetRel:
    """Y d^H Z = (Yd)Z = inf_{z in Z} sup_{y in Y} y d z."""
    return _build(d, "upper", family)


def hausdorff_lower(d: GRel, family: SubsetFamily | Sequence[frozenset[int]] | None = None) -> PowersetRel:
    """Y d_H Z = Y(dZ) = sup_{y in Y} inf_{z in Z} y d z."""
    return _build(d, "lower", family)


# ---------------------------------------------------------------------------
# Functorial properties


def check_hausfunc(d: GRel, e: GRel) -> Report:
    """Lower vs upper, the two composition sandwiches with their factor-2
    bounds, and the absorption identity, over the full powerset."""
    if d.source != e.source or not d.is_square or not e.is_square:
        raise ValueError("check_hausfunc needs two square relations on one carrier")
    fam = SubsetFamily.powerset(d.source)
    dU, dL = hausdorff_upper(d, fam).values, hausdorff_lower(d, fam).values
    eU, eL = hausdorff_upper(e, fam).values, hausdorff_lower(e, fam).values
    de = compose(d, e)
    deU, deL = hausdorff_upper(de, fam).values, hausdorff_lower(de, fam).values
    rep = Report("hausfunc")

    def cell(a: GRel, b: GRel) -> object:
        c = first_excess(a, b)
        return None if c is None else (fam.labels()[c[0]], fam.labels()[c[1]])

    rep.add("lower <= upper (d)", leq(dL, dU), cell(dL, dU))
    rep.add("lower <= upper (e)", leq(eL, eU), cell(eL, eU))
    mid = compose(dL, eL)
    rep.add("(d o e)_H <= d_H o e_H", leq(deL, mid), cell(deL, mid))
    rep.add("d_H o e_H <= 2 (d o e)_H", leq(mid, scale_rel(2, deL)), cell(mid, scale_rel(2, deL)))
    mid = compose(dL, eU)
    rep.add("(d o e)^H <= d_H o e^H", leq(deU, mid), cell(deU, mid))
    rep.add("d_H o e^H <= 2 (d o e)^H", leq(mid, scale_rel(2, deU)), cell(mid, scale_rel(2, deU)))
    a, b = compose(dU, eU), compose(dU, eL)
    rep.add("d^H o e^H = d^H o e_H", a == b, cell(a, b) or cell(b, a))
    return rep


def check_hausdorffprop(d: GRel) -> Report:
    """For every final family of subsets, its union is a d^H-maximum and a
    d_H-supremum.  Enumerates every family, so the carrier is capped at 3."""
    if d.n > 3:
        raise ValueError("check_hausdorffprop enumerates families of subsets; carrier must have at most 3 points")
    fam = SubsetFamily.powerset(d.source)
    up, lo = hausdorff_upper(d, fam).values, hausdorff_lower(d, fam).values
    m = len(fam)
    rep = Report("hausdorffprop")
    bad_max = bad_sup = None
    finals_up = finals_lo = directed_up = 0
    for mask in range(1, 1 << m):
        idx = [i for i in range(m) if mask >> i & 1]
        union = fam.index_of(frozenset().union(*(fam.members[i] for i in idx)))
        if is_final(idx, up):
            finals_up += 1
            directed_up += is_directed(idx, up)
            if union not in d_max_set(idx, up) and bad_max is None:
                bad_max = [fam.labels()[i] for i in idx]
        if is_final(idx, lo):
            finals_lo += 1
            if union not in d_sup_set(idx, lo) and bad_sup is None:
                bad_sup = [fam.labels()[i] for i in idx]
    rep.add("union is the d^H-maximum of every d^H-final family", bad_max is None, bad_max)
    rep.add("union is the d_H-supremum of every d_H-final family", bad_sup is None, bad_sup)
    rep.notes.append(f"{finals_up} d^H-final families ({directed_up} directed), {finals_lo} d_H-final families")
    return rep


# ---------------------------------------------------------------------------
# Completion of a predomain


@dataclass(frozen=True)
class Completion:
    """d^H on the directed subsets, with x sent to its down-set.

    With ``quotient`` set, ``table`` is the quotient by d^H-equivalence and
    ``classes`` maps each directed subset to its class.
    """

    hausdorff: PowersetRel
    embedding: tuple[int, ...]
    report: Report
    table: GRel
    classes: tuple[int, ...]

    def to_json(self) -> dict:
        base = self.hausdorff.base
        return {
            "members": self.hausdorff.family.labels(),
            "table": self.hausdorff.values.to_json(),
            "embedding": {base.labels[x]: self.hausdorff.family.labels()[i] for x, i in enumerate(self.embedding)},
            "quotient": self.table.to_json() if self.classes else None,
            "report": self.report.to_json(),
        }


def complete_predomain(d: GRel, quotient: bool = False) -> Completion:
    """Restrict d^H to the d-directed subsets and verify the completion
    properties.  Raises ValueError unless d is max-continuous."""
    if not d.is_square:
        raise ValueError("completion needs a square relation")
    cont = max_continuous_by_states(d)
    if not cont.holds:
        raise ValueError(f"completion needs a max-continuous relation; {d.source.labels[cont.witness]!r} is not a maximum of a directed subset")
    fam = SubsetFamily(d.source, tuple(directed_subsets(d)))
    H = hausdorff_upper(d, fam)
    L = hausdorff_lower(d, fam).values
    D = H.values
    emb = tuple(fam.index_of(down_set(d, x)) for x in range(d.n))
    rep = Report("completion")
    # the completion clauses rest on the triangle inequality; otherwise they are only observed
    claim = rep.add if is_distance(d) else (lambda name, holds, witness=None: rep.fact(name, holds))
    cell = first_excess(reflexivize_lower(D), L) or first_excess(L, reflexivize_lower(D))
    claim("lower reflexivization of d^H equals d_H on directed subsets", cell is None, cell)
    claim("d^H max-continuous with the down-sets as basis", max_continuous_by_states(D, emb).holds)
    comp = max_complete_by_states(D)
    claim("d^H max-complete", comp.holds, comp.witness)
    cell = first_excess(reflexivize_upper(D), reflexivize_lower(D))
    claim("upper reflexivization of d^H <= lower", cell is None, cell)
    excess = [(x, y) for x in range(d.n) for y in range(d.n) if D.table[emb[x]][emb[y]] > d.table[x][y]]
    rep.add("down-set distance <= d", not excess, excess[:1] or None)
    from .wbd import check_domain

    if check_domain(d, "max").predomain:
        strict = [(x, y) for x in range(d.n) for y in range(d.n) if D.table[emb[x]][emb[y]] != d.table[x][y]]
        rep.add("down-set distance = d on a predomain", not strict, strict[:1] or None)
    else:
        rep.add("down-set distance = d on a predomain", None, note="not a predomain")
    table, classes = (quotient_equivalent(D) if quotient else (D, []))
    return Completion(H, emb, rep, table, tuple(classes))


def extension(d: GRel) -> tuple[GRel, tuple[int, ...]]:
    """X joined with its directed subsets, each x made equivalent to its
    down-set.  Returns the table and the indices of X inside it."""
    c = complete_predomain(d)
    D, emb = c.hausdorff.values, c.embedding
    n, m = d.n, D.n
    where = list(emb) + list(range(m))
    labels = tuple(d.source.labels) + tuple("{" + ",".join(s) + "}" for s in c.hausdorff.family.labels())
    rows = tuple(tuple(D.table[where[i]][where[j]] for j in range(n + m)) for i in range(n + m))
    return GRel(Carrier(labels), Carrier(labels), rows), tuple(range(n))


def check_pdcomp(d: GRel) -> Report:
    """A max-continuous d is a predomain exactly when the extension by directed
    subsets restricts to d, is a max-domain, and has X as a basis."""
    from .wbd import check_domain

    rep = Report("pdcomp")
    if not (is_distance(d) and max_continuous_by_states(d).holds):
        rep.add("hypothesis: max-continuous distance", False)
        rep.applicable = False
        return rep
    ext, xs = extension(d)
    n = d.n
    restricts = all(ext.table[i][j] == d.table[i][j] for i in xs for j in xs)
    domain = (
        max_complete_by_states(ext).holds
        and max_continuous_by_states(ext).holds
        and leq(reflexivize_upper(ext), reflexivize_lower(ext))
    )
    basis = max_continuous_by_states(ext, range(n)).holds
    rep.fact("extension restricts to d", restricts)
    rep.fact("extension is a max-domain", domain)
    rep.fact("X is a basis of the extension", basis)
    rep.require("predomain <=> isometric basis of a max-domain", check_domain(d, "max").predomain, restricts and domain and basis)
    return rep


def check_universality(B: Iterable[int], d: GRel) -> Report:
    """For a basis B of a predomain, x -> (<=^d x) meet B is an isometry into the
    ideals of B under d^H, and it is onto exactly when d is max-complete."""
    from .metric import restrict
    from .wbd import check_domain

    B = tuple(sorted(set(B)))
    rep = Report("universality")
    verdict = check_domain(d, "max")
    rep.add("hypothesis: predomain", verdict.predomain, None if verdict.predomain else verdict.reason)
    basis = is_basis(B, d, "max")
    rep.add("hypothesis: B is a max-basis", basis.holds, basis.witness)
    if not (verdict.predomain and basis.holds):
        rep.applicable = False
        return rep
    dB = restrict(d, B)
    local = {b: i for i, b in enumerate(B)}
    I = ideals(dB)
    fam = SubsetFamily(dB.source, tuple(I))
    H = hausdorff_upper(dB, fam).values
    image = []
    for x in range(d.n):
        image.append(frozenset(local[b] for b in B if d.table[b][x] == 0))
    missing = [d.source.labels[x] for x in range(d.n) if image[x] not in I]
    rep.add("every down-set meet B is an ideal of B", not missing, missing[:1] or None)
    if missing:
        return rep
    pos = [fam.index_of(s) for s in image]
    bad = [(x, y) for x in range(d.n) for y in range(d.n) if H.table[pos[x]][pos[y]] != d.table[x][y]]
    rep.add("isometry", not bad, bad[:1] or None)
    onto = set(pos) == set(range(len(fam)))
    rep.require("onto <=> max-complete", onto, is_max_complete(d).holds)
    rep.notes.append(f"{len(fam)} ideals, {len(set(pos))} in the image of {d.n} points")
    return rep


# ---------------------------------------------------------------------------
# Zero diagonal of d^H on directed subsets


def canonical_profiles(d: GRel) -> list[NetProfile]:
    """One cyclic profile through each zero-clique."""
    return [NetProfile.of(sorted(S)) for S in zero_cliques(d)]


def check_dHhemi(d: GRel, profiles: Sequence[NetProfile] = ()) -> Report:
    """(1) every d-pre-Cauchy profile is d^op-Cauchy, and (2) every d-Cauchy
    profile has a d^op-pre-Cauchy subprofile, are decided over the supplied
    and canonical profiles.  When they hold, d^H has zero diagonal on the
    directed subsets."""
    from .grel import opposite

    op = opposite(d)
    family = list(profiles) + canonical_profiles(d)
    for p in family:
        p.check(d.n)
    rep = Report("dHhemi")
    bad1 = next((p for p in family if is_precauchy(p, d) and not is_cauchy(p, op)), None)
    bad2 = next(
        (p for p in family if is_cauchy(p, d) and not any(is_precauchy(q, op) for q in sub_profiles(p))),
        None,
    )
    c1 = rep.fact("(1) pre-Cauchy profiles are op-Cauchy", bad1 is None)
    c2 = rep.fact("(2) Cauchy profiles have op-pre-Cauchy subprofiles", bad2 is None)
    rep.require("(1) <=> (2)", c1, c2, (bad1 or bad2).to_json(d.source) if (bad1 or bad2) else None)
    if c1:
        dirs = directed_subsets(d)
        nonzero = [sorted(d.source.names(Y)) for Y in dirs if set_dist(Y, d, Y) != 0]
        rep.add("d^H has zero diagonal on directed subsets", not nonzero, nonzero[:1] or None)
    else:
        rep.add("d^H has zero diagonal on directed subsets", None, note="(1) fails")
    return rep


__all__ = [
    "Completion",
    "EXHAUSTIVE_LIMIT",
    "PowersetRel",
    "canonical_profiles",
    "check_dHhemi",
    "check_hausdorffprop",
    "check_hausfunc",
    "check_pdcomp",
    "check_universality",
    "complete_predomain",
    "default_family",
    "sampled_family",
    "extension",
    "hausdorff_lower",
    "hausdorff_upper",
]
