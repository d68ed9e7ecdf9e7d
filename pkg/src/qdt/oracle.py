"""Check registry, seeded sweeps and counterexample search.

Every registered check turns one instance into a ``Verdict``: ``holds``,
``counterexample`` with a witness, or ``not-applicable`` when the statement's
hypothesis fails on the instance.  Sweeps draw instances from the seeded
generators and shrink any counterexample by deleting carrier elements while
the failure persists.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Iterable, Sequence

from . import balls, hausdorff, metric, nets, order, wbd
from .generate import KINDS, BudgetExhausted, generate
from .grel import GRel, all_subsets, restrict
from .nets import NetProfile
from .report import COUNTEREXAMPLE, HOLDS, NOT_APPLICABLE, UNTESTED, Clause, Report, jsonable

SUBSET_ENUM_LIMIT = 4


# ---------------------------------------------------------------------------
# Instances


@dataclass(frozen=True)
class Instance:
    """A relation with the optional extra inputs some checks take."""

    d: GRel
    e: GRel | None = None
    profiles: tuple[NetProfile, ...] = ()
    subset: frozenset[int] | None = None
    grid: balls.BallGrid | None = None

    def __post_init__(self) -> None:
        if not self.d.is_square:
            raise ValueError("checks need a square relation")
        if self.e is not None and (self.e.source != self.d.source or not self.e.is_square):
            raise ValueError("the partner relation must live on the same carrier")
        for p in self.profiles:
            p.check(self.d.n)
        if self.subset is not None and not all(0 <= x < self.d.n for x in self.subset):
            raise ValueError("subset element outside the carrier")

    @property
    def partner(self) -> GRel:
        return self.d if self.e is None else self.e

    def to_json(self) -> dict:
        c = self.d.source
        out: dict[str, Any] = {"relation": self.d.to_json()}
        if self.e is not None:
            out["partner"] = self.e.to_json()
        if self.profiles:
            out["profiles"] = [p.to_json(c) for p in self.profiles]
        if self.subset is not None:
            out["subset"] = c.names(sorted(self.subset))
        if self.grid is not None:
            out["grid"] = self.grid.to_json()
        return out

    @classmethod
    def from_json(cls, data: object) -> "Instance":
        if not isinstance(data, dict):
            raise ValueError("instance JSON must be an object")
        if "relation" not in data:
            return cls(GRel.from_json(data))
        d = GRel.from_json(data["relation"])
        c = d.source
        e = GRel.from_json(data["partner"]) if "partner" in data else None
        profiles = tuple(NetProfile.from_json(c, p) for p in data.get("profiles", []))
        subset = frozenset(c.index(x) for x in data["subset"]) if "subset" in data else None
        grid = balls.BallGrid.from_json(c, data["grid"]) if "grid" in data else None
        return cls(d, e, profiles, subset, grid)

    def digest(self) -> str:
        text = json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def without(self, x: int) -> "Instance | None":
        """The instance on the carrier minus x, or None if that empties it."""
        keep = [i for i in range(self.d.n) if i != x]
        if not keep:
            return None
        pos = {old: new for new, old in enumerate(keep)}
        profiles = tuple(
            NetProfile(tuple(pos[i] for i in p.prefix if i in pos), tuple(pos[i] for i in p.cycle if i in pos))
            for p in self.profiles
            if any(i in pos for i in p.cycle)
        )
        subset = None
        if self.subset is not None:
            subset = frozenset(pos[i] for i in self.subset if i in pos)
            if not subset:
                return None
        d = restrict(self.d, keep)
        grid = None if self.grid is None else balls.BallGrid(d.source, self.grid.radii)
        return Instance(
            d,
            None if self.e is None else restrict(self.e, keep),
            profiles,
            subset,
            grid,
        )


# ---------------------------------------------------------------------------
# Verdicts


@dataclass
class Verdict:
    check: str
    status: str
    witness: Any = None
    statement: str = ""
    digest: str = ""
    report: Report | None = None
    instance: Instance | None = None
    tested: int = 0
    applicable: int = 0
    spec: "CheckSpec | None" = field(default=None, repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.status != COUNTEREXAMPLE

    def to_json(self) -> dict:
        out = {"check": self.check, "instance-digest": self.digest, "status": self.status, "witness": jsonable(self.witness)}
        if self.tested:
            out["tested"] = self.tested
            out["applicable"] = self.applicable
        if self.status == COUNTEREXAMPLE and self.instance is not None:
            out["instance"] = self.instance.to_json()
        return out

    def text(self) -> str:
        head = f"{self.check}: {self.status}"
        if self.digest:
            head += f"  [{self.digest}]"
        if self.tested:
            head += f"  ({self.applicable} applicable of {self.tested})"
        lines = [head]
        if self.statement:
            lines.append(f"  {self.statement}")
        if self.report is not None:
            lines.extend(self.report.summary().splitlines()[1:])
        elif self.witness is not None:
            lines.append(f"  witness: {json.dumps(jsonable(self.witness), ensure_ascii=False)}")
        return "\n".join(lines)

    def reverify(self) -> bool:
        """Re-run the check on the stored instance and compare the outcome."""
        if self.instance is None:
            return False
        again = run_check(self.spec or self.check, self.instance)
        return (again.status, jsonable(again.witness)) == (self.status, jsonable(self.witness))


# ---------------------------------------------------------------------------
# Registry


@dataclass(frozen=True)
class CheckSpec:
    id: str
    statement: str
    run: Callable[[Instance], Report]
    inputs: str = "d"
    gate: Callable[[Instance], bool] | None = None
    gate_reason: str = ""


REGISTRY: dict[str, CheckSpec] = {}


def register(spec: CheckSpec) -> CheckSpec:
    if spec.id in REGISTRY:
        raise ValueError(f"check {spec.id!r} is already registered")
    REGISTRY[spec.id] = spec
    return spec


def check_ids() -> list[str]:
    return sorted(REGISTRY, key=str.lower)


def lookup(check: str | CheckSpec) -> CheckSpec:
    if isinstance(check, CheckSpec):
        return check
    for key, spec in REGISTRY.items():
        if key.lower() == check.lower():
            return spec
    raise KeyError(f"unknown check {check!r}; known checks: {', '.join(check_ids())}")


def _not_applicable(name: str, reason: str) -> Report:
    rep = Report(name)
    rep.add(f"hypothesis: {reason}", False)
    rep.applicable = False
    return rep


def _merge(name: str, labelled: Iterable[tuple[Any, Report]]) -> Report:
    """One report over many sub-inputs: the first failing sub-input is kept
    whole, otherwise one summary clause per status."""
    out = Report(name)
    counts = {HOLDS: 0, NOT_APPLICABLE: 0}
    for label, rep in labelled:
        if rep.status == COUNTEREXAMPLE:
            out.clauses = [Clause(f"on {label}: {c.name}", c.holds, c.witness, c.note) for c in rep.clauses]
            out.notes = rep.notes
            return out
        counts[rep.status] += 1
    out.add(f"holds on {counts[HOLDS]} inputs", True if counts[HOLDS] else None)
    if counts[NOT_APPLICABLE]:
        out.notes.append(f"not applicable on {counts[NOT_APPLICABLE]} inputs")
    out.applicable = counts[HOLDS] > 0
    return out


def _subsets(inst: Instance) -> list[frozenset[int]]:
    if inst.subset is not None:
        return [inst.subset]
    if inst.d.n <= SUBSET_ENUM_LIMIT:
        return all_subsets(inst.d.n, nonempty=True)
    return [frozenset(range(inst.d.n))]


def _profiles(inst: Instance) -> list[NetProfile]:
    if inst.profiles:
        return list(inst.profiles)
    return hausdorff.canonical_profiles(inst.d) + [NetProfile.constant(x) for x in range(inst.d.n)]


def per_subset(name: str, fn: Callable[[GRel, frozenset[int]], Report]) -> Callable[[Instance], Report]:
    def run(inst: Instance) -> Report:
        c = inst.d.source
        return _merge(name, ((f"subset {{{', '.join(c.names(sorted(Y)))}}}", fn(inst.d, Y)) for Y in _subsets(inst)))

    return run


def per_profile(name: str, fn: Callable[[NetProfile, GRel], Report]) -> Callable[[Instance], Report]:
    def run(inst: Instance) -> Report:
        c = inst.d.source
        return _merge(name, ((f"profile {p.to_json(c)}", fn(p, inst.d)) for p in _profiles(inst)))

    return run


def _select(rep: Report, name: str, keep: Callable[[str], bool]) -> Report:
    out = Report(name, [c for c in rep.clauses if keep(c.name)], rep.applicable, list(rep.notes))
    return out


def _interpolation(inst: Instance) -> Report:
    ir = order.interpolation_report(inst.d, inst.e)
    rep = Report("interpolation")
    for k, v in ir.facts.items():
        rep.fact(k, v)
    for line in ir.lines:
        if line.startswith(order.CONTRADICTION):
            rep.add(line, False)
    if not ir.contradictions:
        rep.add("no hypothesis holds with a failing conclusion", True)
    return rep


def _completion(inst: Instance) -> Report:
    try:
        return hausdorff.complete_predomain(inst.d).report
    except ValueError as exc:
        return _not_applicable("completion", f"max-continuous ({exc})")


def _characteristic(inst: Instance) -> bool:
    return all(v == 0 or v == balls.INF for row in inst.d.table for v in row)


def _hemimetric(inst: Instance) -> bool:
    return metric.classify(inst.d).is_hemimetric


def _kw(inst: Instance) -> Report:
    profiles = list(inst.profiles) or hausdorff.canonical_profiles(inst.d)
    return balls.check_kw(inst.d, profiles, inst.grid)


def _builtin_checks() -> list[CheckSpec]:
    d_only = [
        ("hemiprop", "upper and lower reflexivizations are hemimetrics bounding d, and d factors through them",
         lambda i: metric.check_hemiprop(i.d)),
        ("WBprops", "the double-hole way-below table lies between d and its reflexivizations and is a distance",
         lambda i: wbd.check_topological_way_below_props(i.d, "◦◦", i.profiles)),
        ("Rdprops", "the relational way-below tables (sup and max) satisfy the same bounds",
         lambda i: _merge("Rdprops", ((m, wbd.check_way_below_props(i.d, m)) for m in ("sup", "max")))),
        ("Rdomaineqs", "a max-domain is exactly the way-below distance of a sup-complete lower order",
         lambda i: wbd.check_dual_characterization(i.d, "max")),
        ("Tdomaineqs", "a ball-hole domain is exactly the way-below distance of a double-hole complete lower order",
         lambda i: wbd.check_dual_characterization(i.d, "•◦")),
        ("interpolation", "interpolation hypotheses imply their completeness and continuity conclusions",
         _interpolation),
        ("hausdorffprop", "the union of a final family is its upper Hausdorff maximum and lower Hausdorff supremum",
         lambda i: hausdorff.check_hausdorffprop(i.d)),
        ("dHhemi", "pre-Cauchy profiles are op-Cauchy exactly when Cauchy profiles have op-pre-Cauchy subprofiles",
         lambda i: hausdorff.check_dHhemi(i.d, i.profiles)),
        ("completion", "the directed subsets under the upper Hausdorff distance form a max-domain embedding d",
         _completion),
        ("pdcomp", "a max-continuous distance is a predomain iff it is an isometric basis of a max-domain",
         lambda i: hausdorff.check_pdcomp(i.d)),
        ("xdy", "ball orders recover d and match the closed forms",
         lambda i: balls.check_xdy(i.d, i.grid)),
        ("alphatri", "aperture is subadditive along Hausdorff distances of ball families",
         lambda i: balls.check_alphatri(i.d, i.grid)),
        ("contdomballs", "ball-hole completeness and continuity match strict-ball max-completeness and continuity",
         lambda i: balls.check_contdomballs(i.d, i.grid)),
        ("kw", "a ball-hole domain is exactly a strict-ball max-domain with the matching lower order",
         _kw),
    ]
    specs = [CheckSpec(cid, text, fn) for cid, text, fn in d_only]
    specs += [
        CheckSpec("abstractbasis", "for a transitive characteristic relation, abstract basis, max-continuity and "
                  "ball-hole continuity coincide", lambda i: wbd.check_abstract_basis(i.d),
                  gate=_characteristic, gate_reason="characteristic relation"),
        CheckSpec("rv", "a hemimetric is Smyth complete iff its strict ball space is a max-domain",
                  lambda i: _select(_kw(i), "rv", lambda n: n.startswith(("hypothesis", "Smyth complete"))),
                  gate=_hemimetric, gate_reason="hemimetric"),
        CheckSpec("esmyth", "the Smyth completeness clauses of a hemimetric agree",
                  lambda i: _select(_kw(i), "esmyth", lambda n: n.startswith(("hypothesis", "(", "Smyth clauses"))),
                  gate=_hemimetric, gate_reason="hemimetric"),
        CheckSpec("hausfunc", "Hausdorff distances are lax functorial in composition",
                  lambda i: hausdorff.check_hausfunc(i.d, i.partner), inputs="d,e"),
        CheckSpec("bfunc", "formal balls commute with composition and with the reflexivizations",
                  lambda i: balls.check_bfunc(i.d, i.partner, i.grid), inputs="d,e"),
        CheckSpec("binter", "strict ball orders compose and interpolate",
                  lambda i: balls.check_bunder_binter(i.d, i.partner, i.grid), inputs="d,e"),
        CheckSpec("symCauchy", "for a symmetric distance, pre-Cauchy, Cauchy and their op versions coincide",
                  per_profile("symCauchy", nets.check_symCauchy), inputs="d,profile"),
        CheckSpec("clim", "limits of Cauchy profiles are characterized by the limit equation",
                  per_profile("clim", nets.check_clim), inputs="d,profile"),
        CheckSpec("convchar", "convergence in each generated topology matches the ball and hole limits",
                  per_profile("convchar", nets.check_convchar), inputs="d,profile"),
        CheckSpec("dlimits", "limits are inherited by subprofiles",
                  per_profile("dlimits", nets.check_dlimits), inputs="d,profile"),
        CheckSpec("reflexrestrict", "restricting d commutes with the reflexivizations up to the stated bounds",
                  per_subset("reflexrestrict", lambda d, Y: metric.check_reflexrestrict(d, Y)), inputs="d,subset"),
        CheckSpec("FdY", "lifting finite subsets agrees with the set distance",
                  per_subset("FdY", lambda d, Y: order.check_FdY(d, Y)), inputs="d,subset"),
        CheckSpec("YdYd", "a directed subset is a zero-clique of its own set distance",
                  per_subset("YdYd", lambda d, Y: order.check_YdYd(d, Y)), inputs="d,subset"),
        CheckSpec("supmax", "maxima are suprema, and suprema of the reflexivizations relate as stated",
                  per_subset("supmax", lambda d, Y: order.check_supmax(d, Y)), inputs="d,subset"),
        CheckSpec("supmaxrelations", "maxima and suprema through the strict order satisfy the stated inclusions",
                  per_subset("supmaxrelations", lambda d, Y: order.check_supmaxrelations(d, Y)), inputs="d,subset"),
        CheckSpec("directedCauchy", "directed subsets carry Cauchy nets with matching limits",
                  per_subset("directedCauchy", lambda d, Y: order.check_directed_nets(d, Y)), inputs="d,subset"),
        CheckSpec("basis", "definition, composition and density characterizations of a basis agree",
                  per_subset("basis", lambda d, B: order.check_basis(B, d)), inputs="d,subset"),
        CheckSpec("universality", "a basis embeds isometrically into the ideal completion, onto iff max-complete",
                  per_subset("universality", lambda d, B: hausdorff.check_universality(B, d)), inputs="d,subset"),
    ]
    return specs


for _spec in _builtin_checks():
    register(_spec)


# ---------------------------------------------------------------------------
# Running


def _verdict(spec: CheckSpec, inst: Instance, rep: Report) -> Verdict:
    witness = None
    if rep.status == COUNTEREXAMPLE:
        c = rep.failures[0]
        witness = {"clause": c.name, "at": c.witness}
    return Verdict(spec.id, rep.status, witness, spec.statement, inst.digest(), rep, inst, spec=spec)


def run_check(check: str | CheckSpec, instance: Instance | GRel) -> Verdict:
    """Decide one registered check on one instance."""
    spec = lookup(check)
    inst = instance if isinstance(instance, Instance) else Instance(instance)
    if spec.gate is not None and not spec.gate(inst):
        rep = _not_applicable(spec.id, spec.gate_reason)
    else:
        rep = spec.run(inst)
    return _verdict(spec, inst, rep)


def random_instance(spec: CheckSpec, kind: str, size: int, seed: int) -> Instance:
    d = generate(kind, size, seed)
    e = generate(kind, size, seed + 1_000_003) if "e" in spec.inputs.split(",") else None
    return Instance(d, e)


def minimize(check: str | CheckSpec, inst: Instance) -> Instance:
    """Delete carrier elements one at a time while the check still fails."""
    spec = lookup(check)
    changed = True
    while changed:
        changed = False
        for x in range(inst.d.n):
            smaller = inst.without(x)
            if smaller is not None and run_check(spec, smaller).status == COUNTEREXAMPLE:
                inst, changed = smaller, True
                break
    return inst


def _sweep_one(args: tuple[str, str, int, int]) -> Verdict | None:
    check, kind, size, seed = args
    spec = lookup(check)
    try:
        inst = random_instance(spec, kind, size, seed)
    except BudgetExhausted:
        return None
    return run_check(spec, inst)


def search_counterexample(
    check: str | CheckSpec,
    kinds: Sequence[str] = ("distance",),
    sizes: Sequence[int] = (1, 2, 3),
    budget: int = 100,
    seed: int = 0,
    workers: int = 1,
) -> Verdict:
    """Run the check on ``budget`` seeded instances cycling through kinds and
    sizes.  The first counterexample in seed order is minimized and returned."""
    spec = lookup(check)
    for k in kinds:
        if k not in KINDS:
            raise ValueError(f"unknown instance kind {k!r}; choose from {', '.join(KINDS)}")
    if budget <= 0:
        return Verdict(spec.id, UNTESTED, statement=spec.statement)
    jobs = [(kinds[i % len(kinds)], sizes[(i // len(kinds)) % len(sizes)], seed + i) for i in range(budget)]
    if workers > 1 and spec.id in REGISTRY and REGISTRY[spec.id] is spec:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_sweep_one, [(spec.id, *j) for j in jobs]))
    else:
        results = []
        for kind, size, s in jobs:
            try:
                results.append(run_check(spec, random_instance(spec, kind, size, s)))
            except BudgetExhausted:
                results.append(None)
    tested = sum(r is not None for r in results)
    applicable = sum(r is not None and r.status != NOT_APPLICABLE for r in results)
    for r in results:
        if r is not None and r.status == COUNTEREXAMPLE:
            small = minimize(spec, r.instance)
            v = run_check(spec, small)
            return replace(v, tested=tested, applicable=applicable)
    status = HOLDS if applicable else NOT_APPLICABLE
    return Verdict(spec.id, status, statement=spec.statement, tested=tested, applicable=applicable)


__all__ = [
    "CheckSpec",
    "Instance",
    "KINDS",
    "REGISTRY",
    "SUBSET_ENUM_LIMIT",
    "Verdict",
    "check_ids",
    "generate",
    "lookup",
    "minimize",
    "random_instance",
    "register",
    "run_check",
    "search_counterexample",
]
