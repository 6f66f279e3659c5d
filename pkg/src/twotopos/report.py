"""Check records and verification reports shared by every verifier."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Check:
    id: str
    verdict: str
    witness: Any = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL

    def to_json(self) -> dict:
        out = {"id": self.id, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, id: str, passed: bool | str, witness: Any = None, seconds: float = 0.0) -> Check:
        if isinstance(passed, str):
            verdict = passed
        else:
            verdict = PASS if passed else FAIL
        c = Check(id, verdict, witness, seconds)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.verdict, c.witness, c.seconds))

    @contextmanager
    def timed(self, id: str):
        """Record a check whose body sets ``box['ok']`` (and optionally ``box['witness']``)."""
        box: dict = {"ok": True, "witness": None}
        t0 = time.perf_counter()
        yield box
        self.add(id, box["ok"], box["witness"], time.perf_counter() - t0)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list:
        return [c for c in self.checks if c.verdict == FAIL]

    def count(self, verdict: str) -> int:
        return sum(1 for c in self.checks if c.verdict == verdict)

    def first_witness(self):
        for c in self.checks:
            if c.verdict == FAIL:
                return c.witness
        return None


VerificationReport = Report


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return repr(x)
