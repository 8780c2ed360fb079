"""Structured verification reports.

A report is a list of named checks, each either asserted against a
declared tolerance (status pass/fail) or recorded as a measurement
(status measured, where worst_violation carries the measured value).
The JSON rendering is canonical: the schema is versioned, field ordering
is fixed by sort_keys, checks are sorted by name, and the wall-clock
duration is excluded so identical (suite, seed, params) runs produce
identical bytes.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
MEASURED = "measured"


@dataclass
class CheckResult:
    name: str
    status: str
    worst_violation: float
    samples: int
    params: dict

    def __post_init__(self):
        if self.status not in (PASS, FAIL, MEASURED):
            raise ValueError(f"unknown status {self.status!r}")


def check_result(name: str, violation: float, tol: float, samples: int, **params) -> CheckResult:
    """Build a pass/fail check; status is forced by violation vs tol."""
    status = PASS if violation <= tol else FAIL
    params = dict(params)
    params["tol"] = tol
    return CheckResult(name=name, status=status, worst_violation=float(violation),
                       samples=samples, params=params)


def measured(name: str, value: float, samples: int, **params) -> CheckResult:
    """Record a measurement with no tolerance; never fails."""
    return CheckResult(name=name, status=MEASURED, worst_violation=float(value),
                       samples=samples, params=dict(params))


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    seed: int = 0
    tail_bounds: dict = field(default_factory=dict)
    duration: float = 0.0

    def add(self, *checks: CheckResult) -> "VerificationReport":
        self.checks.extend(checks)
        return self

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        self.tail_bounds.update(other.tail_bounds)
        return self

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def sorted_checks(self) -> list[CheckResult]:
        return sorted(self.checks, key=lambda c: c.name)


def _clean_param(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v
    try:
        return float(v)
    except (TypeError, ValueError):
        return str(v)


def to_json(report: VerificationReport) -> str:
    doc = {
        "schema": 1,
        "suite": report.suite,
        "seed": int(report.seed),
        "tail_bounds": {k: float(v) for k, v in sorted(report.tail_bounds.items())},
        "checks": [
            {
                "name": c.name,
                "status": c.status,
                "worst_violation": float(c.worst_violation),
                "samples": int(c.samples),
                "params": {k: _clean_param(v) for k, v in sorted(c.params.items())},
            }
            for c in report.sorted_checks()
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def to_csv(report: VerificationReport) -> str:
    import csv as _csv

    buf = io.StringIO()
    w = _csv.writer(buf)
    w.writerow(["suite", "check", "status", "worst_violation", "samples", "params"])
    for c in report.sorted_checks():
        packed = ";".join(f"{k}={_clean_param(v)}" for k, v in sorted(c.params.items()))
        w.writerow([report.suite, c.name, c.status, repr(float(c.worst_violation)),
                    c.samples, packed])
    return buf.getvalue()


def to_text(report: VerificationReport) -> str:
    lines = [f"suite {report.suite}  seed={report.seed}"]
    for c in report.sorted_checks():
        tol = c.params.get("tol")
        if c.status == MEASURED:
            lines.append(f"  MEAS {c.name:<42} value={c.worst_violation:.6g}  n={c.samples}")
        else:
            lines.append(
                f"  {c.status.upper():<4} {c.name:<42} worst={c.worst_violation:.3g}"
                f"  tol={tol:.3g}  n={c.samples}"
            )
    for k, v in sorted(report.tail_bounds.items()):
        lines.append(f"  tail {k} <= {v:.3g}")
    failing = sum(1 for c in report.checks if c.status == FAIL)
    asserted = [c for c in report.checks if c.status != MEASURED]
    if asserted:
        worst = max(asserted, key=lambda c: c.worst_violation)
        lines.append(
            f"{len(report.checks)} checks, {failing} failing; "
            f"worst violation {worst.worst_violation:.3g} ({worst.name})"
        )
    else:
        lines.append(f"{len(report.checks)} checks, {failing} failing")
    lines.append(f"duration: {report.duration:.2f}s")
    return "\n".join(lines) + "\n"


def render(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(report: VerificationReport, fmt: str = "text", path=None) -> None:
    """Render and write a report to ``path`` or stdout.  I/O errors propagate
    as OSError for the CLI to map onto its exit code."""
    text = render(report, fmt)
    if path is None:
        print(text, end="")
    else:
        with open(path, "w") as fh:
            fh.write(text)
