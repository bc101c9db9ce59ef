"""Structured pass/fail reporting.

A Report is an ordered list of named checks. Each check is either exhaustive
or sampled; failing checks carry a witness (a JSON-friendly dict locating the
violation). Reports serialize to canonical JSON: keys in a fixed order, lists
in insertion order, no volatile fields unless explicitly requested, so reruns
are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    sampled: bool = False
    witness: dict | None = None
    notes: str | None = None

    def to_dict(self) -> dict:
        d: dict = {"name": self.name, "passed": self.passed}
        if self.sampled:
            d["sampled"] = True
        if self.witness is not None:
            d["witness"] = self.witness
        if self.notes:
            d["notes"] = self.notes
        return d


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, *, sampled: bool = False,
            witness: dict | None = None, notes: str | None = None) -> Check:
        c = Check(name, bool(passed), sampled=sampled, witness=witness, notes=notes)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check((prefix + c.name) if prefix else c.name,
                                     c.passed, sampled=c.sampled,
                                     witness=c.witness, notes=c.notes))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_human(self) -> str:
        lines = [f"subject: {self.subject}"]
        for c in self.checks:
            mark = "ok" if c.passed else "FAIL"
            tag = " (sampled)" if c.sampled else ""
            lines.append(f"  [{mark}] {c.name}{tag}")
            if c.notes:
                lines.append(f"         {c.notes}")
            if c.witness is not None and not c.passed:
                lines.append(f"         witness: {json.dumps(c.witness, sort_keys=True)}")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"
