"""Verification reports: the JSON surface shared by every check."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class VerificationReport:
    check: str
    family: str | None = None
    params: dict | None = None
    degree: int | None = None
    mode: str | None = None
    points: list | None = None
    result: str = "pass"
    mismatch: dict | None = None
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.result == "pass"

    def to_dict(self) -> dict:
        out = {
            "schemaVersion": SCHEMA_VERSION,
            "check": self.check,
            "family": self.family,
            "params": self.params,
            "D": self.degree,
            "mode": self.mode,
            "points": self.points,
            "result": self.result,
            "mismatch": self.mismatch,
            "elapsedMs": round(self.elapsed_ms, 3),
        }
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class timed:
    """Context manager filling elapsed_ms on a report."""

    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = (time.perf_counter() - self.t0) * 1000.0
        return False
