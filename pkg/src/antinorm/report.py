"""Margins, tallies and the report records written by the checks.

Every checked inequality is reduced to ``lhs <= rhs``.  Its margin is
``rhs - lhs`` and a trial fails when the margin drops below
``-tol * (|lhs| + |rhs| + 1)``, so a larger margin always means more slack.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from . import matfile

PASS, FAIL, UNMET = "pass", "fail", "hypotheses-not-met"


@dataclass(frozen=True)
class Term:
    """One instance of an inequality lhs <= rhs."""

    label: str
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def scale(self) -> float:
        return abs(self.lhs) + abs(self.rhs) + 1.0

    @property
    def rel_margin(self) -> float:
        return self.margin / self.scale

    def violated(self, tol: float) -> bool:
        m = self.margin
        return math.isnan(m) or m < -tol * self.scale


def le(label: str, lhs, rhs) -> Term:
    return Term(label, float(lhs), float(rhs))


def ge(label: str, lhs, rhs) -> Term:
    """lhs >= rhs, stored as rhs <= lhs."""
    return Term(label, float(rhs), float(lhs))


def eq(label: str, lhs, rhs, tol: float) -> Term:
    """|lhs - rhs| <= tol, as a one-sided term."""
    return Term(label, abs(float(lhs) - float(rhs)), float(tol))


class Tally:
    """Running worst-case bookkeeping for a stream of terms.

    The worst term is the one with the smallest relative margin; ties keep
    the first one seen, so the outcome only depends on the trial order.
    """

    def __init__(self, tol: float):
        self.tol = tol
        self.trials = 0
        self.terms = 0
        self.violations = 0
        self.worst: Optional[Term] = None
        self.worst_key: Optional[dict] = None
        self.worst_instance: Optional[dict] = None

    def add(self, terms, key: dict, instance: Callable[[], dict] | dict | None = None) -> None:
        self.trials += 1
        for t in terms:
            self.terms += 1
            if t.violated(self.tol):
                self.violations += 1
            rel = t.rel_margin
            if self.worst is None or (rel < self.worst.rel_margin) or (math.isnan(rel) and not math.isnan(self.worst.rel_margin)):
                self.worst = t
                self.worst_key = dict(key)
                inst = instance() if callable(instance) else instance
                self.worst_instance = dict(inst) if inst is not None else None

    def merge(self, other: "Tally") -> None:
        """Fold another tally in (used to combine per-dimension runs in order)."""
        self.trials += other.trials
        self.terms += other.terms
        self.violations += other.violations
        if other.worst is not None and (self.worst is None or other.worst.rel_margin < self.worst.rel_margin):
            self.worst, self.worst_key, self.worst_instance = other.worst, other.worst_key, other.worst_instance


@dataclass
class CheckReport:
    check_id: str
    status: str
    trials: int
    dims: list
    seed: int
    tol: float
    worst_margin: float = math.inf
    worst_rel_margin: float = math.inf
    worst_label: str = ""
    worst_key: dict = field(default_factory=dict)
    worst_instance: Optional[dict] = None
    violations: int = 0
    terms: int = 0
    bindings: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @classmethod
    def from_tally(cls, check_id, tally: Tally, dims, seed, bindings=None, certificates=None,
                   wall_time=0.0, notes=None) -> "CheckReport":
        w = tally.worst
        return cls(
            check_id=check_id,
            status=FAIL if tally.violations else PASS,
            trials=tally.trials,
            dims=list(dims),
            seed=seed,
            tol=tally.tol,
            worst_margin=w.margin if w else math.inf,
            worst_rel_margin=w.rel_margin if w else math.inf,
            worst_label=w.label if w else "",
            worst_key=tally.worst_key or {},
            worst_instance=tally.worst_instance,
            violations=tally.violations,
            terms=tally.terms,
            bindings=dict(bindings or {}),
            certificates=list(certificates or []),
            notes=list(notes or []),
            wall_time=wall_time,
        )

    @classmethod
    def unmet(cls, check_id, dims, seed, tol, bindings, certificates, notes=None) -> "CheckReport":
        return cls(check_id, UNMET, 0, list(dims), seed, tol, bindings=dict(bindings),
                   certificates=list(certificates), notes=list(notes or []))

    def to_dict(self, with_instance: bool = True) -> dict:
        d = asdict(self)
        if not with_instance:
            d.pop("worst_instance")
        return matfile.encode(d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def csv_row(self) -> dict:
        return {
            "check_id": self.check_id,
            "dims": " ".join(str(d) for d in self.dims),
            "trials": self.trials,
            "pass": self.status,
            "worst_margin": _fmt(self.worst_margin),
            "seconds": f"{self.wall_time:.3f}",
        }

    def summary_line(self) -> str:
        return (f"{self.check_id:<32} {self.status:<19} trials={self.trials:<6} "
                f"worst_margin={_fmt(self.worst_margin):<12} violations={self.violations}")


CSV_FIELDS = ["check_id", "dims", "trials", "pass", "worst_margin", "seconds"]


def _fmt(x) -> str:
    return f"{x:.6g}" if isinstance(x, float) else str(x)


def to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()
