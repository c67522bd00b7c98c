"""Summary: Application configuration for OpenQuantal.

Importance: Centralizes environment, .env, and config defaults for consistent caps and seeds.
Alternatives: Use a dedicated settings library like Pydantic Settings.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from pathlib import Path


@dataclass(frozen=True)
class AppConfig:
    """Summary: Holds enumeration caps, sampling seed, storage, and server settings.

    Importance: Ensures every checker derives its limits from a single source of truth.
    Alternatives: Pass caps as keyword arguments through every call.
    """

    db_path: str
    cache_reports: bool
    tensor_cap: int
    embed_cap: int
    search_cap: int
    support_search_cap: int
    acp_subset_cap: int
    sample_count: int
    seed: int
    workers: int
    api_host: str
    api_port: int
    log_level: str
    fixtures_dir: str

    @staticmethod
    def from_env(defaults_path: Path | None = None) -> "AppConfig":
        """Summary: Build configuration from defaults, .env, and environment.

        Importance: Keeps all variables defined in config defaults while allowing overrides.
        Alternatives: Parse only environment variables without a defaults file.
        """

        defaults = load_defaults(defaults_path or Path("config") / "defaults.json")
        load_dotenv(Path(".env"))

        def pick(key: str) -> str:
            return os.getenv(f"OPENQUANTAL_{key.upper()}", defaults[key])

        return AppConfig(
            db_path=pick("db_path"),
            cache_reports=_parse_bool(pick("cache_reports")),
            tensor_cap=_parse_positive(pick("tensor_cap"), "tensor_cap"),
            embed_cap=_parse_positive(pick("embed_cap"), "embed_cap"),
            search_cap=_parse_positive(pick("search_cap"), "search_cap"),
            support_search_cap=_parse_positive(pick("support_search_cap"), "support_search_cap"),
            acp_subset_cap=_parse_positive(pick("acp_subset_cap"), "acp_subset_cap"),
            sample_count=_parse_positive(pick("sample_count"), "sample_count"),
            seed=int(pick("seed")),
            workers=_parse_positive(pick("workers"), "workers"),
            api_host=pick("api_host"),
            api_port=int(pick("api_port")),
            log_level=pick("log_level").upper(),
            fixtures_dir=pick("fixtures_dir"),
        )

    def with_overrides(self, *, cap: int | None = None, seed: int | None = None) -> "AppConfig":
        """Summary: Apply per-invocation CLI overrides.

        Importance: `--cap` raises every exhaustive cap at once; `--seed` fixes sampling.
        Alternatives: Mutate environment variables before building the config.
        """

        updated = self
        if cap is not None:
            updated = replace(
                updated,
                tensor_cap=cap,
                embed_cap=max(cap, updated.embed_cap),
                search_cap=cap,
            )
        if seed is not None:
            updated = replace(updated, seed=seed)
        return updated


def _parse_bool(value: str) -> bool:
    """Summary: Parse a boolean flag string.

    Importance: Accepts the usual spellings found in .env files.
    Alternatives: Require JSON booleans in config defaults.
    """

    return value.strip().lower() in {"1", "true", "yes", "on"}


def _parse_positive(value: str, key: str) -> int:
    number = int(value)
    if number < 1:
        raise ValueError(f"Config value {key} must be positive, got {number}")
    return number


def load_defaults(path: Path) -> dict[str, str]:
    """Summary: Load configuration defaults from JSON.

    Importance: Ensures all variables exist in a single config file.
    Alternatives: Inline defaults in the AppConfig initializer.
    """

    if not path.exists():
        raise FileNotFoundError(f"Defaults file not found: {path}")
    return json.loads(path.read_text(encoding="utf-8"))


def load_dotenv(path: Path) -> None:
    """Summary: Load key-value pairs from a .env file into the environment.

    Importance: Supports local cap and seed overrides without exporting variables.
    Alternatives: Use python-dotenv or shell profiles.
    """

    if not path.exists():
        return
    for raw_line in path.read_text(encoding="utf-8").splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, value = line.split("=", 1)
        os.environ.setdefault(key.strip(), value.strip())
