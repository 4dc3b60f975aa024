"""Residual bookkeeping shared by every check in the package."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class CheckEntry:
    name: str
    residual: float
    tolerance: float
    passed: bool
    context: str = ""
    status: str = PASS

    def __post_init__(self):
        if not (self.residual >= 0 or math.isnan(self.residual)):
            raise ValueError(f"negative residual for {self.name}")


@dataclass
class VerificationReport:
    """Named residuals with tolerances and verdicts.

    Skipped entries count as passing; a construction failure is recorded as
    a failed entry with infinite residual.
    """

    entries: list[CheckEntry] = field(default_factory=list)

    @property
    def overall_pass(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def max_residual(self) -> float:
        active = [e.residual for e in self.entries if e.status != SKIPPED]
        return max(active, default=0.0)

    def add(self, name, residual, tolerance, context=""):
        residual = float(residual)
        ok = bool(residual <= tolerance)
        entry = CheckEntry(name, residual, float(tolerance), ok, context,
                           PASS if ok else FAIL)
        self.entries.append(entry)
        return entry

    def skip(self, name, reason, context=""):
        ctx = f"{context}; {reason}" if context else reason
        entry = CheckEntry(name, 0.0, 0.0, True, ctx, SKIPPED)
        self.entries.append(entry)
        return entry

    def fail(self, name, error, context=""):
        ctx = f"{context}; {type(error).__name__}: {error}" if context else (
            f"{type(error).__name__}: {error}")
        entry = CheckEntry(name, math.inf, 0.0, False, ctx, FAIL)
        self.entries.append(entry)
        return entry

    def extend(self, other: VerificationReport):
        self.entries.extend(other.entries)

    def sorted(self) -> VerificationReport:
        return VerificationReport(sorted(self.entries, key=lambda e: e.name))

    def __getitem__(self, name) -> CheckEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self):
        return [e.name for e in self.entries]

    def to_dict(self):
        return {
            "overall_pass": self.overall_pass,
            "entries": [asdict(e) for e in self.entries],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data) -> VerificationReport:
        return cls([CheckEntry(**e) for e in data["entries"]])

    def summary_lines(self):
        for e in self.entries:
            yield (f"{e.status.upper():7s} {e.name:40s} "
                   f"residual={e.residual:.3e} tol={e.tolerance:.1e}  {e.context}")
