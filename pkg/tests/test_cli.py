"""Summary: CLI integration tests.

Importance: Scripts depend on the exit codes and the JSON rendering of each command.
Alternatives: Test services directly and trust the argument parsing.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from openquantal.catalog import CATALOG
from openquantal.cli import run_cli

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
REJECTED = {"meet-semilattice", "left-zero"}


@pytest.fixture(autouse=True)
def _isolated_archive(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(ROOT)
    monkeypatch.setenv("OPENQUANTAL_DB_PATH", str(tmp_path / "cli.db"))
    monkeypatch.setenv("OPENQUANTAL_LOG_LEVEL", "WARNING")


def test_check_clean_frame_exits_zero(capsys: pytest.CaptureFixture[str]) -> None:
    """Summary: Verify P({a,b}) passes every frame check and its expected flags.

    Importance: Exit 0 means no failure and no red flag.
    Alternatives: Parse the summary line instead of the exit code.
    """

    assert run_cli(["check", str(FIXTURES / "powerset2.json")]) == 0
    output = capsys.readouterr().out
    assert output.startswith("check: P({a,b}) (frame)")
    assert "exit 0" in output


def test_check_non_distributive_frame_exits_one(capsys: pytest.CaptureFixture[str]) -> None:
    """Summary: Verify M3 is reported negative, with its failing triple as witness in JSON.

    Importance: Exit 1 separates negative classifications from red flags.
    Alternatives: Treat every failure as an error.
    """

    assert run_cli(["check", str(FIXTURES / "m3.json"), "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["exit_code"] == 1
    assert data["red_flags"] == 0
    distributive = next(item for item in data["findings"] if item["name"] == "distributive")
    assert distributive["status"] == "fail"
    assert len(distributive["witness"]) == 3


def test_check_accepts_path_without_suffix() -> None:
    """Summary: Verify a fixture path may omit .json.

    Importance: `check fixtures/m3` is the documented short form.
    Alternatives: Require exact file names.
    """

    assert run_cli(["check", str(FIXTURES / "m3")]) == 1


def test_input_errors_exit_three(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Summary: Verify missing files, empty files, and unknown catalog names exit 3.

    Importance: Input errors must be distinguishable from negative results.
    Alternatives: Exit 1 for every problem.
    """

    assert run_cli(["check", str(tmp_path / "missing.json")]) == 3
    empty = tmp_path / "empty.json"
    empty.write_text("", encoding="utf-8")
    assert run_cli(["check", str(empty)]) == 3
    assert "empty.json:1:1" in capsys.readouterr().err
    assert run_cli(["check", "catalog:nope"]) == 3
    assert run_cli(["search", "powerset:2", "B∧X"]) == 3


def test_unknown_expected_flag_is_an_input_error(tmp_path: Path) -> None:
    """Summary: Verify an expected flag the kind never computes is rejected.

    Importance: A typo in expectations must not pass silently.
    Alternatives: Ignore unknown expectations.
    """

    path = tmp_path / "frame.json"
    path.write_text(
        json.dumps({"kind": "frame", "powerset": ["a"], "expected": {"etale": True}}),
        encoding="utf-8",
    )
    assert run_cli(["check", str(path)]) == 3


def test_wrong_expectation_is_a_red_flag(tmp_path: Path) -> None:
    """Summary: Verify a contradicted expected flag exits 2.

    Importance: Expected flags turn fixture files into regression tests.
    Alternatives: Report the mismatch as a negative result.
    """

    path = tmp_path / "frame.json"
    path.write_text(
        json.dumps({"kind": "frame", "powerset": ["a", "b"], "expected": {"boolean": False}}),
        encoding="utf-8",
    )
    assert run_cli(["check", str(path)]) == 2


def test_catalog_and_history(capsys: pytest.CaptureFixture[str]) -> None:
    """Summary: Verify the catalog listing and that checks appear in the history.

    Importance: Every run is archived.
    Alternatives: Keep history in memory.
    """

    assert run_cli(["catalog"]) == 0
    listing = capsys.readouterr().out
    assert "z2-quantale (quantale): group quantale of Z/2" in listing
    assert run_cli(["check", str(FIXTURES / "powerset2.json")]) == 0
    assert run_cli(["check", str(FIXTURES / "powerset2.json"), "--no-cache"]) == 0
    capsys.readouterr()
    assert run_cli(["history", "--filter", "check"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    assert all("check P({a,b}) (frame) exit 0" in line for line in lines)


def test_cached_rendering_is_identical(capsys: pytest.CaptureFixture[str]) -> None:
    """Summary: Verify a cached report renders the same bytes as the fresh run.

    Importance: Renderings carry no timing, so replays are indistinguishable.
    Alternatives: Mark cached output.
    """

    path = str(FIXTURES / "m3.json")
    run_cli(["check", path, "--json"])
    fresh = capsys.readouterr().out
    run_cli(["check", path, "--json"])
    assert capsys.readouterr().out == fresh


def test_convert_semigroup_writes_quantale(tmp_path: Path) -> None:
    """Summary: Verify I₂ converts to L∨(I₂) and the written file loads back.

    Importance: Converted structures are written in the structure-file format.
    Alternatives: Print conversions only.
    """

    out = tmp_path / "l_i2.json"
    code = run_cli(["convert", str(FIXTURES / "i2.json"), "--to", "quantale", "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert run_cli(["check", str(out)]) in (0, 1)


@pytest.mark.parametrize("name", sorted(set(CATALOG) - REJECTED))
def test_catalog_sweep_raises_no_red_flag(name: str, capsys: pytest.CaptureFixture[str]) -> None:
    """Summary: Verify every loadable catalog instance checks with its round trip and no red flag.

    Importance: A red flag anywhere in the catalog means a proved property failed.
    Alternatives: Check only the instances named in the documentation.
    """

    code = run_cli(["check", f"catalog:{name}", "--roundtrip", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code in (0, 1)
    assert data["exit_code"] == code
    assert data["red_flags"] == 0
    assert not [item for item in data["findings"] if item.get("red_flag")]
