"""Verification report containers."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    defect: float
    tol: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.defect) and self.defect <= self.tol

    def as_dict(self) -> dict:
        return {"name": self.name, "defect": self.defect, "tol": self.tol, "pass": self.passed}


@dataclass
class Report:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "checks": [c.as_dict() for c in self.checks],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def table(self) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"suite={self.suite} seed={self.seed}",
                 f"{'check':<{width}}  {'defect':>12}  {'tol':>9}  result"]
        for c in self.checks:
            lines.append(f"{c.name:<{width}}  {c.defect:12.3e}  {c.tol:9.1e}  "
                         f"{'PASS' if c.passed else 'FAIL'}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)
