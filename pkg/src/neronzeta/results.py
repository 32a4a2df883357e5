from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """Outcome of one verification; truthy iff it passed."""

    name: str
    passed: bool
    details: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        out = {"status": "pass" if self.passed else "fail"}
        if self.details:
            out["details"] = [str(d) for d in self.details]
        return out
