"""Outcome records for inequality/identity checks, and their serialization.

Every verification routine returns a :class:`CheckReport`.  The sign
convention is uniform: ``slack >= -tol`` means the check passed.  For an
inequality ``lhs <= rhs`` the slack is ``rhs - lhs``; for an equality
``lhs = rhs`` the slack is ``-(|lhs - rhs|)``, so the same predicate covers
both.

Reports serialize to JSON (stable key order) and RFC-4180 CSV; parsing the
JSON back yields equal reports.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass

__all__ = [
    "TOL_REL",
    "CheckReport",
    "inequality_report",
    "equality_report",
    "digest_inputs",
    "reports_to_json",
    "reports_from_json",
    "reports_to_csv",
]

# Default relative tolerance: inequalities are exact in exact arithmetic,
# slack only has to absorb binary64 rounding.
TOL_REL = 1e-10

_FIELDS = (
    "suite",
    "case_id",
    "p",
    "lhs",
    "rhs",
    "slack",
    "tol",
    "passed",
    "inputs_digest",
    "anchor",
)


@dataclass(frozen=True)
class CheckReport:
    suite: str
    case_id: str
    p: float
    lhs: float
    rhs: float
    slack: float
    tol: float
    passed: bool
    inputs_digest: str
    anchor: str

    def as_dict(self) -> dict:
        d = {}
        for name in _FIELDS:
            value = getattr(self, name)
            if name == "p" and math.isinf(value):
                value = "inf"
            d[name] = value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        p = d["p"]
        p = math.inf if p == "inf" else float(p)
        return cls(
            suite=str(d["suite"]),
            case_id=str(d["case_id"]),
            p=p,
            lhs=float(d["lhs"]),
            rhs=float(d["rhs"]),
            slack=float(d["slack"]),
            tol=float(d["tol"]),
            passed=bool(d["passed"]),
            inputs_digest=str(d["inputs_digest"]),
            anchor=str(d["anchor"]),
        )


def _finish(suite, case_id, p, lhs, rhs, slack, tol, digest, anchor) -> CheckReport:
    return CheckReport(
        suite=suite,
        case_id=case_id,
        p=float(p),
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(slack),
        tol=float(tol),
        passed=bool(slack >= -tol),
        inputs_digest=digest,
        anchor=anchor,
    )


def inequality_report(suite, case_id, p, lhs, rhs, tol, digest, anchor) -> CheckReport:
    """Report for an assertion lhs <= rhs (slack = rhs - lhs)."""
    return _finish(suite, case_id, p, lhs, rhs, rhs - lhs, tol, digest, anchor)


def equality_report(suite, case_id, p, lhs, rhs, tol, digest, anchor) -> CheckReport:
    """Report for an assertion lhs = rhs (slack = -|lhs - rhs|)."""
    return _finish(suite, case_id, p, lhs, rhs, -abs(rhs - lhs), tol, digest, anchor)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest_inputs(*parts) -> str:
    """Short deterministic digest of the (serialized) inputs of a check."""
    h = hashlib.sha256()
    for part in parts:
        h.update(canonical_json(part).encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()[:16]


def reports_to_json(reports) -> str:
    rows = [r.as_dict() for r in reports]
    return json.dumps(rows, indent=2, sort_keys=False) + "\n"


def reports_from_json(text: str) -> list[CheckReport]:
    return [CheckReport.from_dict(d) for d in json.loads(text)]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writerow(_FIELDS)
    for r in reports:
        d = r.as_dict()
        writer.writerow([d[name] for name in _FIELDS])
    return buf.getvalue()
