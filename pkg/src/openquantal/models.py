"""Summary: Result dataclasses shared by checkers, services, and surfaces.

Importance: Gives every checker one vocabulary for verdicts, witnesses, and report findings.
Alternatives: Return loose dictionaries from each checker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    """Summary: Outcome of a single finding.

    Importance: Separates hypothesis gating (not applicable) from genuine failures.
    Alternatives: Encode not-applicable as None on a boolean.
    """

    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class Verdict:
    """Summary: Boolean outcome of an exhaustive check with a counterexample.

    Importance: Every refutation carries element names so reports can print it.
    Alternatives: Return bare booleans and recompute witnesses on demand.
    """

    holds: bool
    witness: tuple[str, ...] = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds

    @staticmethod
    def ok(detail: str = "") -> "Verdict":
        """Return a passing verdict."""

        return Verdict(True, (), detail)

    @staticmethod
    def fail(*witness: str, detail: str = "") -> "Verdict":
        """Return a failing verdict carrying witness names."""

        return Verdict(False, tuple(witness), detail)

    def to_dict(self) -> dict[str, Any]:
        return {"holds": self.holds, "witness": list(self.witness), "detail": self.detail}


@dataclass(frozen=True)
class Finding:
    """Summary: One line of a report: a named check with status and witness.

    Importance: Lets reports mix classification results and theorem checks uniformly.
    Alternatives: Keep separate report sections with bespoke fields.
    """

    section: str
    name: str
    status: Status
    witness: tuple[str, ...] = ()
    detail: str = ""
    red_flag: bool = False

    @staticmethod
    def from_verdict(
        section: str, name: str, verdict: Verdict, *, theorem: bool = False
    ) -> "Finding":
        """Summary: Convert a verdict into a finding.

        Importance: A failing verdict on a proved property becomes a red flag.
        Alternatives: Let each caller decide the red-flag bit manually.
        """

        status = Status.PASS if verdict.holds else Status.FAIL
        return Finding(
            section=section,
            name=name,
            status=status,
            witness=verdict.witness,
            detail=verdict.detail,
            red_flag=theorem and not verdict.holds,
        )

    @staticmethod
    def skipped(section: str, name: str, reason: str) -> "Finding":
        """Return a not-applicable finding with the unmet hypothesis as detail."""

        return Finding(section, name, Status.NOT_APPLICABLE, (), reason, False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "section": self.section,
            "name": self.name,
            "status": self.status.value,
            "witness": list(self.witness),
            "detail": self.detail,
            "red_flag": self.red_flag,
        }


@dataclass
class Report:
    """Summary: Aggregated outcome of one CLI or API command.

    Importance: Single object rendered to text or JSON and archived in storage.
    Alternatives: Print findings as they are produced.
    """

    command: str
    title: str
    kind: str
    findings: list[Finding] = field(default_factory=list)
    values: dict[str, Any] = field(default_factory=dict)
    negative: bool = False
    timing: dict[str, float] = field(default_factory=dict)

    def add(self, finding: Finding) -> None:
        self.findings.append(finding)

    def extend(self, findings: list[Finding]) -> None:
        self.findings.extend(findings)

    def record(self, section: str, name: str, verdict: Verdict, *, theorem: bool = False) -> None:
        """Append a finding built from a verdict."""

        self.findings.append(Finding.from_verdict(section, name, verdict, theorem=theorem))

    @property
    def red_flags(self) -> list[Finding]:
        return [finding for finding in self.findings if finding.red_flag]

    @property
    def exit_code(self) -> int:
        """Summary: CLI exit status for this report.

        Importance: 2 on any red flag, 1 when classification-negative, else 0.
        Alternatives: Always exit 0 and let callers parse output.
        """

        if self.red_flags:
            return 2
        if self.negative:
            return 1
        return 0
