"""Report objects returned by the validate_* family.

Validation of well-formed-but-possibly-wrong structures never raises; it
returns a report carrying one witness per failure so callers (and the CLI
JSON output) can point at the exact broken site.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidStructure


@dataclass
class Failure:
    kind: str
    where: tuple
    detail: str = ""

    def to_json(self):
        return {"kind": self.kind, "where": list(self.where), "detail": self.detail}


@dataclass
class ValidationReport:
    ok: bool = True
    failures: list[Failure] = field(default_factory=list)
    checked: int = 0

    def fail(self, kind: str, where: tuple, detail: str = ""):
        self.ok = False
        self.failures.append(Failure(kind, where, detail))

    def bump(self, n: int = 1):
        self.checked += n

    def merge(self, other: "ValidationReport"):
        self.ok = self.ok and other.ok
        self.failures.extend(other.failures)
        self.checked += other.checked

    def raise_if_failed(self, context: str = ""):
        if not self.ok:
            first = self.failures[0]
            msg = f"{context}: " if context else ""
            raise InvalidStructure(f"{msg}{first.kind} at {first.where}: {first.detail}"
                                   + (f" (+{len(self.failures) - 1} more)" if len(self.failures) > 1 else ""))
        return self

    def to_json(self):
        return {
            "ok": self.ok,
            "checked": self.checked,
            "failures": [f.to_json() for f in self.failures[:50]],
            "failure_count": len(self.failures),
        }
