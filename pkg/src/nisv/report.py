"""Check reports and their json, csv and text renderings."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

FIELDS = ("id", "params", "order", "lambda_samples", "defects", "tolerances", "pass", "seed", "runtime_ms")
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class CheckReport:
    id: str
    params: dict
    order: int
    lambda_samples: int
    defects: dict
    tolerances: dict
    passed: bool
    seed: int
    runtime_ms: float = 0.0
    notes: str = field(default="", compare=False)

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "params": dict(self.params),
            "order": self.order,
            "lambda_samples": self.lambda_samples,
            "defects": {k: _number(v) for k, v in self.defects.items()},
            "tolerances": {k: _number(v) for k, v in self.tolerances.items()},
            "pass": bool(self.passed),
            "seed": self.seed,
            "runtime_ms": self.runtime_ms,
        }


def _number(x):
    """JSON has no inf/nan; encode them as strings so output stays valid."""
    x = float(x)
    if math.isfinite(x):
        return x
    return str(x)


def sort_reports(reports) -> list:
    return sorted(reports, key=lambda r: (r.id, r.order, r.lambda_samples))


def to_json(reports) -> str:
    return json.dumps([r.as_dict() for r in reports], indent=2) + "\n"


def to_csv(reports) -> str:
    """One row per report; defects and tolerances are flattened as defect.<name>."""
    rows = [r.as_dict() for r in reports]
    dnames = sorted({k for r in rows for k in r["defects"]})
    tnames = sorted({k for r in rows for k in r["tolerances"]})
    header = ["id", "params", "order", "lambda_samples"]
    header += [f"defect.{k}" for k in dnames] + [f"tolerance.{k}" for k in tnames]
    header += ["pass", "seed", "runtime_ms"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        line = [r["id"], json.dumps(r["params"], sort_keys=True), r["order"], r["lambda_samples"]]
        line += [repr(r["defects"][k]) if k in r["defects"] else "" for k in dnames]
        line += [repr(r["tolerances"][k]) if k in r["tolerances"] else "" for k in tnames]
        line += [str(r["pass"]).lower(), r["seed"], r["runtime_ms"]]
        w.writerow(line)
    return buf.getvalue()


def to_text(reports) -> str:
    lines = []
    for r in reports:
        verdict = "PASS" if r.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in r.params.items())
        lines.append(f"{verdict} {r.id} [{params}] order={r.order} lambda_samples={r.lambda_samples}")
        for k, v in r.defects.items():
            lines.append(f"    {k:<28} {float(v):.3e}")
        for k, v in r.tolerances.items():
            lines.append(f"    tol {k:<24} {float(v):.3e}")
        if r.notes:
            lines.append(f"    note: {r.notes}")
    return "\n".join(lines) + ("\n" if lines else "")


def render(reports, fmt: str) -> str:
    if fmt == "json":
        return to_json(reports)
    if fmt == "csv":
        return to_csv(reports)
    if fmt == "text":
        return to_text(reports)
    raise ValueError(f"unknown report format {fmt!r}; choose from {FORMATS}")


def emit_report(reports, fmt: str, path: str | Path | None = None) -> str:
    """Render the reports; write them to ``path`` when given."""
    text = render(list(reports), fmt)
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
    return text
