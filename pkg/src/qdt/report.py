"""Structured outcomes shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
COUNTEREXAMPLE = "counterexample"
NOT_APPLICABLE = "not-applicable"
UNTESTED = "untested"


@dataclass
class Clause:
    name: str
    holds: bool | None
    witness: Any = None
    note: str = ""


@dataclass(frozen=True)
class Decision:
    """A yes/no answer with an optional witness explaining a "no"."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class Report:
    """Named clauses evaluated on one instance.

    A clause whose value is ``None`` was skipped because its hypothesis failed.
    Clauses named ``hypothesis: ...`` record gates and never count as failures.
    """

    check: str
    clauses: list[Clause] = field(default_factory=list)
    applicable: bool = True
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, holds: bool | None, witness: Any = None, note: str = "") -> bool | None:
        self.clauses.append(Clause(name, holds, witness, note))
        return holds

    def fact(self, name: str, value: bool) -> bool:
        """Record an observed fact that is neither a pass nor a failure."""
        self.clauses.append(Clause(name, None, None, "fact: " + ("true" if value else "false")))
        return value

    def require(self, name: str, left: bool, right: bool, witness: Any = None) -> bool:
        """Record that two independently decided facts agree."""
        ok = left == right
        self.add(name, ok, None if ok else {"left": left, "right": right, "at": witness})
        return ok

    def __getitem__(self, name: str) -> bool | None:
        for c in self.clauses:
            if c.name == name:
                return c.holds
        raise KeyError(name)

    @property
    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if c.holds is False and not c.name.startswith("hypothesis")]

    @property
    def status(self) -> str:
        if not self.applicable:
            return NOT_APPLICABLE
        return COUNTEREXAMPLE if self.failures else HOLDS

    @property
    def ok(self) -> bool:
        return self.status != COUNTEREXAMPLE

    def summary(self) -> str:
        lines = [f"{self.check}: {self.status}"]
        for c in self.clauses:
            mark = {True: "ok", False: "FAIL", None: "n/a"}[c.holds]
            extra = f"  witness={c.witness}" if c.holds is False and c.witness is not None else ""
            note = f"  ({c.note})" if c.note else ""
            lines.append(f"  [{mark}] {c.name}{note}{extra}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "status": self.status,
            "clauses": [
                {"name": c.name, "holds": c.holds, "witness": jsonable(c.witness), "note": c.note} for c in self.clauses
            ],
            "notes": list(self.notes),
        }


def jsonable(obj: Any) -> Any:
    """Convert witnesses (fractions, sets, tuples) into JSON-friendly values."""
    from fractions import Fraction

    from .xreal import fmt

    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=repr)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return repr(obj)
