"""Pass/fail bookkeeping shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


class IdentityFailure(AssertionError):
    """An identity that must hold exactly did not; carries the instance."""

    def __init__(self, name: str, instance: str, detail: str = ""):
        self.name = name
        self.instance = instance
        msg = f"{name} failed at {instance}"
        super().__init__(msg + (f": {detail}" if detail else ""))


@dataclass
class Report:
    suite: str
    checks: list[tuple[str, str]] = field(default_factory=list)

    def record(self, name: str, instance: str, ok: bool, detail: str = "") -> None:
        if not ok:
            raise IdentityFailure(name, instance, detail)
        self.checks.append((name, instance))

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def count(self) -> int:
        return len(self.checks)

    def summary(self) -> dict:
        by_name: dict[str, int] = {}
        for name, _ in self.checks:
            by_name[name] = by_name.get(name, 0) + 1
        return {"suite": self.suite, "passed": True, "checks": self.count, "by_identity": by_name}
