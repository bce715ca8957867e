"""Versioned JSON run reports.

Every command emits one object::

    {"schema": "abeljac-report", "version": 1, "tool_version": ...,
     "command": ..., "inputs": {...}, "outputs": {...},
     "checks": [{"name", "passed", ...}], "timings": {...}, "status": ...}

Polynomials inside ``inputs`` and ``outputs`` are canonical text and parse
back with ``parse_poly``.  See docs/report_schema.md.
"""

from __future__ import annotations

import json
from typing import Any

SCHEMA = "abeljac-report"
VERSION = 1
STATUSES = ("ok", "check-failed", "error", "budget-exhausted")
REQUIRED = {"schema": str, "version": int, "tool_version": str, "command": str,
            "inputs": dict, "outputs": dict, "checks": list, "timings": dict, "status": str}


class ReportError(ValueError):
    pass


def run_report(command: str, inputs: dict, outputs: dict, checks: list[dict],
               timings: dict, status: str) -> dict:
    from . import __version__
    rep = {"schema": SCHEMA, "version": VERSION, "tool_version": __version__,
           "command": command, "inputs": inputs, "outputs": outputs,
           "checks": checks, "timings": timings, "status": status}
    validate(rep)
    return rep


def error_report(command: str, kind: str, message: str, **extra: Any) -> dict:
    return run_report(command, {}, {"error": {"kind": kind, "message": message, **extra}},
                      [], {}, "error")


def validate(rep: dict) -> None:
    for key, typ in REQUIRED.items():
        if key not in rep:
            raise ReportError(f"missing field {key!r}")
        if not isinstance(rep[key], typ):
            raise ReportError(f"field {key!r} should be {typ.__name__}")
    if rep["schema"] != SCHEMA or rep["version"] != VERSION:
        raise ReportError("unknown schema or version")
    if rep["status"] not in STATUSES:
        raise ReportError(f"bad status {rep['status']!r}")
    for c in rep["checks"]:
        if not isinstance(c, dict) or "name" not in c or not isinstance(c.get("passed"), bool):
            raise ReportError("each check needs a name and a boolean 'passed'")
    json.dumps(rep)


def dumps(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=False, default=str)


def loads(text: str) -> dict:
    rep = json.loads(text)
    validate(rep)
    return rep
