"""Summary: Render reports as text or JSON, and convert them to and from archive records.

Importance: Renderings leave out timing so two runs on the same input and seed print the
same bytes.
Alternatives: Print findings straight from the checkers.
"""

from __future__ import annotations

import json
import logging
from typing import Any, Mapping

from openquantal.models import Finding, Report, Status

logger = logging.getLogger(__name__)

MARKERS = {Status.PASS: "✓", Status.FAIL: "✗", Status.NOT_APPLICABLE: "–"}
RED_FLAG = "‼"


def report_to_dict(report: Report, *, include_timing: bool = False) -> dict[str, Any]:
    """Summary: Machine-readable form of a report.

    Importance: The archive stores timing; the JSON rendering does not.
    Alternatives: Use dataclasses.asdict and post-process enums.
    """

    data: dict[str, Any] = {
        "command": report.command,
        "title": report.title,
        "kind": report.kind,
        "exit_code": report.exit_code,
        "negative": report.negative,
        "red_flags": len(report.red_flags),
        "findings": [finding.to_dict() for finding in report.findings],
        "values": report.values,
    }
    if include_timing:
        data["timing"] = report.timing
    return data


def report_from_dict(data: Mapping[str, Any]) -> Report:
    """Rebuild a report from `report_to_dict` output, e.g. a cached archive record."""

    findings = [
        Finding(
            section=item["section"],
            name=item["name"],
            status=Status(item["status"]),
            witness=tuple(item.get("witness", ())),
            detail=item.get("detail", ""),
            red_flag=bool(item.get("red_flag", False)),
        )
        for item in data.get("findings", [])
    ]
    return Report(
        command=data["command"],
        title=data["title"],
        kind=data["kind"],
        findings=findings,
        values=dict(data.get("values", {})),
        negative=bool(data.get("negative", False)),
        timing=dict(data.get("timing", {})),
    )


def render_json(report: Report) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def _format_value(value: Any) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, ensure_ascii=False)


def _finding_line(finding: Finding, witnesses: bool) -> str:
    line = f"  {finding.name} {MARKERS[finding.status]}"
    if finding.red_flag:
        line = f"{line} {RED_FLAG} red flag"
    extras = []
    if witnesses and finding.witness:
        extras.append("witness: " + ", ".join(finding.witness))
    if finding.detail and (witnesses or finding.status is Status.NOT_APPLICABLE):
        extras.append(finding.detail)
    if extras:
        line = f"{line}  ({'; '.join(extras)})"
    return line


def render_text(report: Report, *, witnesses: bool = False) -> str:
    """Summary: Human-readable report grouped by section, in finding order.

    Importance: Red flags are always marked; witnesses and details only print with
    `witnesses=True`, except the unmet hypothesis of a not-applicable finding.
    Alternatives: A table layout with fixed columns.
    """

    lines = [f"{report.command}: {report.title} ({report.kind})"]
    section = None
    for finding in report.findings:
        if finding.section != section:
            section = finding.section
            lines.append(f"[{section}]")
        lines.append(_finding_line(finding, witnesses))
    if report.values:
        lines.append("[values]")
        for key, value in report.values.items():
            lines.append(f"  {key} = {_format_value(value)}")
    counts = {status: 0 for status in Status}
    for finding in report.findings:
        counts[finding.status] += 1
    lines.append(
        f"summary: {counts[Status.PASS]} passed, {counts[Status.FAIL]} failed, "
        f"{counts[Status.NOT_APPLICABLE]} n/a, {len(report.red_flags)} red flags, "
        f"exit {report.exit_code}"
    )
    return "\n".join(lines) + "\n"


def render(report: Report, *, as_json: bool = False, witnesses: bool = False) -> str:
    if as_json:
        return render_json(report)
    return render_text(report, witnesses=witnesses)
