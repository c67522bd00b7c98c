"""Summary: Tests for verdicts, findings, exit codes, and report renderings.

Importance: Scripts read the exit code and the JSON rendering, so both must be stable.
Alternatives: Assert on CLI output only.
"""

from __future__ import annotations

import json

from openquantal.models import Finding, Report, Status, Verdict
from openquantal.report import render, render_text, report_from_dict, report_to_dict


def _report() -> Report:
    report = Report("check", "Q_A", "quantale")
    report.record("axioms", "B", Verdict.ok())
    report.record("axioms", "R", Verdict.fail("{a}", detail="a ≰ aa*a"))
    report.add(Finding.skipped("bisections", "weakly multiplicative", "not open"))
    report.values["|Q|"] = 4
    report.timing["axioms"] = 0.25
    return report


def test_theorem_failures_are_red_flags() -> None:
    """Summary: Verify only failing theorem verdicts become red flags.

    Importance: Red flags mean a proved statement failed, which is a bug signal.
    Alternatives: Flag every failure.
    """

    assert not Finding.from_verdict("s", "n", Verdict.fail("x")).red_flag
    assert Finding.from_verdict("s", "n", Verdict.fail("x"), theorem=True).red_flag
    assert not Finding.from_verdict("s", "n", Verdict.ok(), theorem=True).red_flag
    assert Finding.skipped("s", "n", "why").status == Status.NOT_APPLICABLE


def test_exit_code_ordering() -> None:
    """Summary: Verify red flags win over negative classifications.

    Importance: Exit 2 must never be masked by exit 1.
    Alternatives: Exit with the first failure's code.
    """

    report = _report()
    assert report.exit_code == 0
    report.negative = True
    assert report.exit_code == 1
    report.record("lemmas", "a ≤ aa*a", Verdict.fail("{a}"), theorem=True)
    assert report.exit_code == 2
    assert len(report.red_flags) == 1


def test_text_rendering_hides_witnesses_by_default() -> None:
    """Summary: Verify witnesses print only on request while n/a reasons always print.

    Importance: Default output stays short; the unmet hypothesis explains a skipped check.
    Alternatives: Always print witnesses.
    """

    report = _report()
    text = render_text(report)
    assert text.startswith("check: Q_A (quantale)\n[axioms]\n")
    assert "  R ✗\n" in text
    assert "(not open)" in text
    assert "  |Q| = 4" in text
    assert text.endswith("summary: 1 passed, 1 failed, 1 n/a, 0 red flags, exit 0\n")
    detailed = render_text(report, witnesses=True)
    assert "R ✗  (witness: {a}; a ≰ aa*a)" in detailed


def test_json_rendering_omits_timing() -> None:
    """Summary: Verify the JSON rendering is stable and leaves timing to the archive.

    Importance: Identical inputs and seeds must print identical bytes.
    Alternatives: Include timing and strip it in tests.
    """

    report = _report()
    data = json.loads(render(report, as_json=True))
    assert "timing" not in data
    assert data["exit_code"] == 0
    assert data["findings"][1]["witness"] == ["{a}"]
    assert render(report, as_json=True) == render(report, as_json=True)


def test_archive_record_rebuilds_report() -> None:
    """Summary: Verify the archive form keeps timing and rebuilds an equal report.

    Importance: Cached reports are replayed from archive records.
    Alternatives: Store only the rendered text.
    """

    report = _report()
    data = report_to_dict(report, include_timing=True)
    assert data["timing"] == {"axioms": 0.25}
    rebuilt = report_from_dict(data)
    assert rebuilt == report
