"""Plain records returned by the identity and symmetry checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np


@dataclass
class CheckRecord:
    """Outcome of one numerical identity check.

    Attributes
    ----------
    name : str
        Short identifier of the identity.
    max_deviation : float
        Max-norm of ``lhs - rhs`` (absolute unless ``relative`` is set).
    tolerance : float or None
        Pass threshold; ``None`` means informational only.
    witness : dict or None
        Optional location/value where the worst deviation occurred.
    """

    name: str
    max_deviation: float
    tolerance: float | None = None
    witness: dict[str, Any] | None = None
    relative: bool = False
    notes: str = ""

    def __post_init__(self):
        self.max_deviation = float(self.max_deviation)
        if self.max_deviation < 0 or math.isnan(self.max_deviation):
            raise ValueError(f"invalid deviation for {self.name}: {self.max_deviation}")

    @property
    def passed(self) -> bool:
        return self.tolerance is None or self.max_deviation <= self.tolerance

    def with_tolerance(self, tol: float) -> "CheckRecord":
        return CheckRecord(self.name, self.max_deviation, tol, self.witness, self.relative, self.notes)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if self.relative:
            out["relative"] = True
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = self.notes
        return out


# Symmetry transforms report through the same record type.
SymmetryReport = CheckRecord


def max_abs(x) -> float:
    """Max absolute value of an array, 0.0 for empty input."""
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def merge_max(name: str, records: Iterable[CheckRecord], tolerance: float | None = None) -> CheckRecord:
    """Collapse repeated checks of one identity into its worst case."""
    worst: CheckRecord | None = None
    for r in records:
        if worst is None or r.max_deviation > worst.max_deviation:
            worst = r
    if worst is None:
        return CheckRecord(name, 0.0, tolerance)
    return CheckRecord(name, worst.max_deviation, tolerance, worst.witness, worst.relative, worst.notes)


@dataclass
class SuiteReport:
    """Ordered collection of check records for one suite."""

    suite: str
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def first_failure(self) -> CheckRecord | None:
        for r in self.records:
            if not r.passed:
                return r
        return None

    def to_json(self) -> dict[str, Any]:
        return {"suite": self.suite, "passed": self.passed, "records": [r.to_json() for r in self.records]}
