"""Verification reports: one record per check, JSON or markdown output.

Reports are deterministic for a fixed configuration; only the ``timing``
block varies between runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Check:
    id: str
    paper_ref: str
    residual: float
    tolerance: float
    # exact checks pass iff residual == 0; others iff residual <= tolerance
    exact: bool = False
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if math.isnan(self.residual):
            return False
        if self.exact:
            return self.residual == 0
        return self.residual <= self.tolerance

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "residual": _finite(self.residual),
            "tolerance": 0.0 if self.exact else self.tolerance,
            "comparison": "exact" if self.exact else "tolerance",
        }
        if self.detail:
            out["detail"] = _jsonable(self.detail)
        return out


@dataclass
class Report:
    suite: str
    checks: list[Check]
    config: dict
    seconds: float = 0.0
    sections: list["Report"] = field(default_factory=list)

    def ordered(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: c.id)

    def all_checks(self) -> list[Check]:
        out = list(self.checks)
        for s in self.sections:
            out.extend(s.all_checks())
        return out

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.all_checks())

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "passed": self.passed,
            "config": _jsonable(self.config),
            "checks": [c.to_dict() for c in self.ordered()],
        }
        if self.sections:
            doc["sections"] = [s.to_dict() for s in self.sections]
        doc["timing"] = {"seconds": round(self.seconds, 6)}
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_markdown(self) -> str:
        lines = [f"# Suite `{self.suite}`: {'PASS' if self.passed else 'FAIL'}", ""]
        cfg = ", ".join(f"{k}={v}" for k, v in sorted(self.config.items()))
        lines += [f"Config: {cfg}", ""]
        lines += _markdown_table(self.ordered())
        for s in self.sections:
            lines += ["", f"## `{s.suite}`: {'PASS' if s.passed else 'FAIL'}", ""]
            lines += _markdown_table(s.ordered())
        lines += ["", f"Elapsed: {self.seconds:.3f} s", ""]
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "markdown":
            return self.to_markdown()
        raise ValueError(f"unknown report format {fmt!r}")


def _markdown_table(checks: list[Check]) -> list[str]:
    rows = ["| id | status | residual | tolerance | reference |", "|---|---|---|---|---|"]
    for c in checks:
        tol = "exact" if c.exact else f"{c.tolerance:.1e}"
        rows.append(f"| {c.id} | {c.status} | {c.residual:.3e} | {tol} | {c.paper_ref} |")
    return rows


def _finite(x: float):
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return float(x)


def _jsonable(obj):
    """Coerce numpy scalars/arrays and complex numbers into JSON values."""
    import numpy as np

    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _finite(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)
