"""Pass/fail reports for checks that collect failures instead of raising."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    check: str
    passed: bool
    witness: Any = None

    def to_dict(self) -> dict:
        return {"check": self.check, "passed": self.passed, "witness": _jsonable(self.witness)}


@dataclass
class Report:
    operation: str
    verdicts: list[Verdict] = field(default_factory=list)

    def add(self, check: str, passed: bool, witness: Any = None) -> Verdict:
        v = Verdict(check, bool(passed), witness)
        self.verdicts.append(v)
        return v

    @property
    def ok(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def __getitem__(self, check: str) -> Verdict:
        for v in self.verdicts:
            if v.check == check:
                return v
        raise KeyError(check)

    def to_dict(self) -> dict:
        return {"operation": self.operation, "ok": self.ok,
                "verdicts": [v.to_dict() for v in self.verdicts]}


def _jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=str) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(x) for x in items]
    return str(obj)
