"""Pass/fail records shared by every verification routine.

A verifier returns a :class:`Report`: an ordered list of named checks, each
carrying the measured residual and the tolerance it was judged against.
Reports render to one line per check (text) or to a deterministic JSON
payload.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckRecord:
    name: str
    passed: bool
    residual: float
    tol: float
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "passed": bool(self.passed),
            "residual": float(self.residual),
            "tol": float(self.tol),
        }
        if self.note:
            d["note"] = self.note
        return d

    def format_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status}  {self.name}  residual={self.residual:.3e} (tol {self.tol:.1e})"
        if self.note:
            line += f"  [{self.note}]"
        return line


@dataclass
class Report:
    title: str
    records: list[CheckRecord] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(
        self,
        name: str,
        passed: bool,
        residual: float = 0.0,
        tol: float = 0.0,
        note: str = "",
    ) -> CheckRecord:
        rec = CheckRecord(name, bool(passed), float(residual), float(tol), note)
        self.records.append(rec)
        return rec

    def check(
        self,
        name: str,
        residual: float,
        tol,
        scale: float = 1.0,
        note: str = "",
    ) -> CheckRecord:
        """Record a residual judged by a Tolerance against a scale."""
        bound = tol.rel * scale + tol.abs
        return self.add(name, residual <= bound, residual, bound, note)

    def merge(self, other: "Report", prefix: str = "") -> None:
        for rec in other.records:
            name = f"{prefix}{rec.name}" if prefix else rec.name
            self.records.append(
                CheckRecord(name, rec.passed, rec.residual, rec.tol, rec.note)
            )
        for key, val in other.info.items():
            self.info.setdefault(key, val)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.records), default=0.0)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def to_dict(self) -> dict:
        d = {
            "title": self.title,
            "ok": self.ok,
            "checks": [r.to_dict() for r in self.records],
        }
        if self.info:
            d["info"] = _jsonable(self.info)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def format_text(self) -> str:
        lines = [self.title]
        lines += ["  " + r.format_line() for r in self.records]
        verdict = "OK" if self.ok else "FAILED"
        lines.append(f"  => {verdict} ({len(self.records)} checks)")
        return "\n".join(lines)


def _jsonable(value):
    """Recursively coerce numpy scalars/arrays so json.dumps succeeds."""
    import numpy as np

    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.complexfloating) or isinstance(value, complex):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    return value
