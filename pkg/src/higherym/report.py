"""Structured check reports.

Reports are plain dicts serialized as sorted JSON, so identical configs and
seeds produce byte-identical output.  Wall-clock timings are opt-in because
they would break that reproducibility contract.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction


def check_entry(
    name: str,
    residual: Fraction | None = None,
    status: str = "pass",
    reason: str | None = None,
    extra: dict | None = None,
) -> dict:
    entry: dict = {"name": name, "status": status}
    if residual is not None:
        entry["residual"] = str(residual)
        entry["residual_float"] = float(residual)
    if reason is not None:
        entry["reason"] = reason
    if extra:
        entry.update(extra)
    return entry


def residual_check(name: str, residual: Fraction, extra: dict | None = None) -> dict:
    return check_entry(
        name,
        residual,
        "pass" if residual == 0 else "fail",
        extra=extra,
    )


def make_report(command: str, source: str, params: dict, checks: list[dict]) -> dict:
    digest = None
    try:
        with open(source, "rb") as fh:
            digest = hashlib.sha256(fh.read()).hexdigest()
    except OSError:
        pass
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for c in checks:
        counts[c["status"]] = counts.get(c["status"], 0) + 1
    return {
        "command": command,
        "config": {"path": source, "sha256": digest},
        "params": params,
        "checks": checks,
        "summary": {
            "total": len(checks),
            "passed": counts.get("pass", 0),
            "failed": counts.get("fail", 0),
            "skipped": counts.get("skipped", 0),
            "ok": counts.get("fail", 0) == 0,
        },
    }


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def emit(report: dict, out_path: str | None):
    text = render(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")


def exit_code(report: dict) -> int:
    return 0 if report["summary"]["ok"] else 1
