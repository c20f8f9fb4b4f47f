"""Check records and the json/csv/text renderings of a CLI run."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

from . import __version__

CSV_COLUMNS = (
    "command", "family", "subspace", "check_name", "paper_anchor",
    "target", "observed", "deviation", "pass",
)


@dataclass
class Check:
    name: str
    anchor: str
    target: float
    observed: float
    deviation: float
    passed: bool
    family: str = ""
    subspace: str = ""

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "target": _num(self.target),
            "observed": _num(self.observed),
            "deviation": _num(self.deviation),
            "pass": bool(self.passed),
        }


def _num(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    x = float(x)
    return x if math.isfinite(x) else str(x)


@dataclass
class RunReport:
    command: str
    seed: int | None = None
    samples: int | None = None
    tol: float | None = None
    checks: list[Check] = field(default_factory=list)
    result: dict[str, Any] = field(default_factory=dict)
    wall_ms: float = 0.0
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, *args, **kwargs) -> Check:
        check = Check(*args, **kwargs)
        self.checks.append(check)
        return check

    def as_dict(self) -> dict[str, Any]:
        out = {
            "command": self.command,
            "version": __version__,
            "seed": self.seed,
            "samples": self.samples,
            "tol": self.tol,
            "checks": [c.as_dict() for c in self.checks],
            "pass": self.passed,
            "wall_ms": round(self.wall_ms, 3),
        }
        if self.result:
            out["result"] = self.result
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for c in self.checks:
            d = c.as_dict()
            writer.writerow([
                self.command, c.family, c.subspace, c.name, c.anchor,
                repr(d["target"]), repr(d["observed"]), repr(d["deviation"]), d["pass"],
            ])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.command} (version {__version__})"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(
                f"  [{status}] {c.name} ({c.anchor}): target={c.target:.6g} "
                f"observed={c.observed:.17g} deviation={c.deviation:.3e}"
            )
        for key, value in self.result.items():
            lines.append(f"  {key}: {value}")
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} checks, {self.wall_ms:.1f} ms)")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": lambda: self.to_json() + "\n", "csv": self.to_csv, "text": self.to_text}[fmt]()
