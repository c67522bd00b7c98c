"""Summary: Tests for configuration loading.

Importance: Ensures defaults, .env, and environment overrides behave correctly.
Alternatives: Validate configuration manually during runtime.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import pytest

from openquantal.config import AppConfig, load_defaults, load_dotenv

DEFAULTS = Path(__file__).resolve().parent.parent / "config" / "defaults.json"


def _write_defaults(tmp_path: Path, **overrides: str) -> Path:
    defaults = json.loads(DEFAULTS.read_text(encoding="utf-8"))
    defaults.update(overrides)
    (tmp_path / "config").mkdir()
    path = tmp_path / "config" / "defaults.json"
    path.write_text(json.dumps(defaults), encoding="utf-8")
    return path


def test_load_defaults_reads_json(tmp_path: Path) -> None:
    """Summary: Verify defaults are parsed from JSON.

    Importance: Confirms config file is the source of truth for variables.
    Alternatives: Hardcode defaults in the test.
    """

    defaults_path = tmp_path / "defaults.json"
    defaults_path.write_text("{\"db_path\": \"test.db\"}", encoding="utf-8")
    defaults = load_defaults(defaults_path)
    assert defaults["db_path"] == "test.db"
    with pytest.raises(FileNotFoundError):
        load_defaults(tmp_path / "missing.json")


def test_load_dotenv_sets_env(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Summary: Ensure .env values populate environment variables without overriding them.

    Importance: Local cap overrides must not mask variables exported by the shell.
    Alternatives: Assume OS environment is always set.
    """

    env_path = tmp_path / ".env"
    env_path.write_text(
        "# local caps\nOPENQUANTAL_TENSOR_CAP=6\nOPENQUANTAL_SEED=9\n", encoding="utf-8"
    )
    monkeypatch.delenv("OPENQUANTAL_TENSOR_CAP", raising=False)
    monkeypatch.setenv("OPENQUANTAL_SEED", "4")
    load_dotenv(env_path)
    assert os.getenv("OPENQUANTAL_TENSOR_CAP") == "6"
    assert os.getenv("OPENQUANTAL_SEED") == "4"


def test_app_config_uses_defaults(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Summary: Verify AppConfig honors defaults when env is absent.

    Importance: Confirms config file remains the baseline for variables.
    Alternatives: Inline defaults directly in the AppConfig class.
    """

    _write_defaults(tmp_path, db_path="test.db")
    monkeypatch.chdir(tmp_path)
    for key in ("DB_PATH", "TENSOR_CAP", "SEED", "CACHE_REPORTS", "LOG_LEVEL"):
        monkeypatch.delenv(f"OPENQUANTAL_{key}", raising=False)
    config = AppConfig.from_env()
    assert config.db_path == "test.db"
    assert config.cache_reports is True
    assert config.tensor_cap == 8
    assert config.embed_cap == 32
    assert config.search_cap == 5
    assert config.seed == 0
    assert config.workers == 1
    assert config.log_level == "INFO"


def test_environment_overrides_defaults(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Summary: Verify OPENQUANTAL_ variables win over the defaults file.

    Importance: Scripted runs set caps and seeds through the environment.
    Alternatives: Accept overrides only as CLI flags.
    """

    _write_defaults(tmp_path)
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("OPENQUANTAL_TENSOR_CAP", "5")
    monkeypatch.setenv("OPENQUANTAL_CACHE_REPORTS", "off")
    monkeypatch.setenv("OPENQUANTAL_LOG_LEVEL", "debug")
    config = AppConfig.from_env()
    assert config.tensor_cap == 5
    assert config.cache_reports is False
    assert config.log_level == "DEBUG"


def test_non_positive_caps_are_rejected(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Summary: Verify a zero cap is a configuration error.

    Importance: A zero cap would skip every exhaustive check silently.
    Alternatives: Clamp caps to one.
    """

    _write_defaults(tmp_path)
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("OPENQUANTAL_EMBED_CAP", "0")
    with pytest.raises(ValueError, match="embed_cap"):
        AppConfig.from_env()


def test_with_overrides_raises_caps_together(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    """Summary: Verify --cap sets the tensor and search caps and never lowers the embed cap.

    Importance: One flag widens every exhaustive check.
    Alternatives: Provide one flag per cap.
    """

    _write_defaults(tmp_path)
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("OPENQUANTAL_EMBED_CAP", raising=False)
    config = AppConfig.from_env()
    raised = config.with_overrides(cap=12, seed=7)
    assert (raised.tensor_cap, raised.search_cap, raised.embed_cap) == (12, 12, 32)
    assert raised.seed == 7
    assert config.with_overrides() == config
    assert config.with_overrides(cap=40).embed_cap == 40
