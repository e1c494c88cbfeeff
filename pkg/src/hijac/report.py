"""Structured PASS/FAIL reports shared by the checking modules."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
UNDECIDED = "UNDECIDED"
NOT_APPLICABLE = "NOT-APPLICABLE"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    offending: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status, "detail": self.detail}
        if self.offending is not None:
            out["offending"] = self.offending
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, ok, detail: str = "", offending=None) -> Check:
        if isinstance(ok, str):
            status = ok
        else:
            status = PASS if ok else FAIL
        c = Check(name, status, detail, None if offending is None else str(offending))
        self.checks.append(c)
        return c

    @property
    def status(self) -> str:
        statuses = [c.status for c in self.checks]
        if any(s == FAIL for s in statuses):
            return FAIL
        if any(s == UNDECIDED for s in statuses):
            return UNDECIDED
        if statuses and all(s == NOT_APPLICABLE for s in statuses):
            return NOT_APPLICABLE
        return PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.passed

    def to_text(self) -> str:
        lines = [f"{self.title}: {self.status}"]
        for c in self.checks:
            line = f"  [{c.status}] {c.name}"
            if c.detail:
                line += f" -- {c.detail}"
            lines.append(line)
            if c.offending is not None and c.status != PASS:
                lines.append(f"      offending: {c.offending}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "data": self.data,
        }

    def __str__(self):
        return self.to_text()
