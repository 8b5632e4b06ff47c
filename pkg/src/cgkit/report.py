"""Check results and the versioned report document emitted by the CLI."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from . import __version__

SCHEMA_VERSION = 1

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass
class CheckResult:
    name: str
    status: str
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    timing_ms: float | None = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INFO):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError(f"failing check {self.name!r} must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witness": self.witness,
            "details": self.details,
            "timing_ms": self.timing_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckResult":
        return cls(d["name"], d["status"], d.get("witness"), d.get("details", {}),
                   d.get("timing_ms"))


def check(name: str, ok: bool, witness: dict | None = None, **details) -> CheckResult:
    """Shorthand: pass/fail result.  A failing result without witness gets one."""
    if not ok and witness is None:
        witness = {"reason": "condition false"}
    return CheckResult(name, PASS if ok else FAIL, None if ok else witness, details)


def info(name: str, **details) -> CheckResult:
    return CheckResult(name, INFO, None, details)


def poly_witness(row, col, diff) -> dict:
    """Witness for an operator identity: location plus the nonzero difference."""
    return {"row": list(row), "col": list(col), "difference": str(diff),
            "difference_rows": diff.to_rows()}


@contextmanager
def timed(results: list, enabled: bool = True):
    """Attach elapsed milliseconds to every result appended inside the block."""
    start = time.perf_counter()
    before = len(results)
    yield
    if enabled:
        ms = round((time.perf_counter() - start) * 1000.0, 3)
        for r in results[before:]:
            r.timing_ms = ms


@dataclass
class Report:
    command: str
    params: dict[str, Any]
    checks: list[CheckResult] = field(default_factory=list)
    tool_version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def sorted_checks(self) -> list[CheckResult]:
        return sorted(self.checks, key=lambda c: c.name)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "command": self.command,
            "params": self.params,
            "checks": [c.to_dict() for c in self.sorted_checks()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d["command"], d["params"], [CheckResult.from_dict(c) for c in d["checks"]],
                   d["tool_version"])
