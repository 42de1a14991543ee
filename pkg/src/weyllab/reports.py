"""Check results, experiment reports and their JSON/CSV serialisation.

Numeric values are emitted with ``repr``-style shortest round-trip
formatting in both formats, so a JSON report and a CSV report of the same
experiment contain identical numbers.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one inequality/identity check: ``lhs <= rhs`` (or ``==``).

    ``margin`` is ``rhs - lhs`` for inequalities (worst case over a scan),
    so a healthy check has a non-negative margin.  ``detail`` names the
    comparison so reports are self-describing.
    """

    name: str
    holds: bool
    lhs: float
    rhs: float
    margin: float
    detail: str = ""

    def as_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "name": self.name,
            "holds": self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
        }
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class ExperimentReport:
    """Structured result of a verification suite or parameter sweep."""

    experiment: str
    config: dict[str, Any] = field(default_factory=dict)
    rows: list[dict[str, Any]] = field(default_factory=list)
    checks: list[CheckResult] = field(default_factory=list)
    fitted_slope: float | None = None
    slope_stderr: float | None = None
    wall_time_s: float = 0.0

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def add_row(self, params: dict[str, Any], value: float, bound: float,
                ratio: float | None = None, **extra: Any) -> None:
        if ratio is None:
            ratio = value / bound if bound else float("inf")
        row = {"params": params, "value": value, "bound": bound, "ratio": ratio}
        row.update(extra)
        self.rows.append(row)

    def as_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "experiment": self.experiment,
            "config": self.config,
            "rows": self.rows,
            "checks": [c.as_dict() for c in self.checks],
        }
        if self.fitted_slope is not None:
            d["fitted_slope"] = self.fitted_slope
            d["slope_stderr"] = self.slope_stderr
        d["wall_time_s"] = self.wall_time_s
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        """One CSV line per row; params flattened into their own columns."""
        buf = io.StringIO()
        if not self.rows:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["name", "holds", "lhs", "rhs", "margin"])
            for c in self.checks:
                writer.writerow([c.name, c.holds, _fmt(c.lhs), _fmt(c.rhs), _fmt(c.margin)])
            return buf.getvalue()
        param_keys = list(self.rows[0]["params"].keys())
        extra_keys = [k for k in self.rows[0] if k not in ("params", "value", "bound", "ratio")]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(param_keys + ["value", "bound", "ratio"] + extra_keys)
        for row in self.rows:
            rec = [_fmt(row["params"].get(k)) for k in param_keys]
            rec += [_fmt(row["value"]), _fmt(row["bound"]), _fmt(row["ratio"])]
            rec += [_fmt(row.get(k)) for k in extra_keys]
            writer.writerow(rec)
        return buf.getvalue()

    def write(self, path: str, fmt: str = "json") -> None:
        text = self.to_json() if fmt == "json" else self.to_csv()
        with open(path, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _fmt(x: Any) -> Any:
    if isinstance(x, float):
        return repr(x)
    return x
