"""Summary: Application factory wiring core services.

Importance: Centralizes dependency creation for the CLI and the API.
Alternatives: Instantiate services manually in each entrypoint.
"""

from __future__ import annotations

from dataclasses import dataclass

from openquantal.config import AppConfig
from openquantal.services import (
    BisectionService,
    CheckService,
    ConvertService,
    CoverService,
    ReportArchive,
    RoundtripService,
    SearchService,
)
from openquantal.storage.sqlite_store import ReportStore


@dataclass(frozen=True)
class AppContext:
    """Summary: Shared application context for building services.

    Importance: Reuses the report store across commands and requests.
    Alternatives: Rebuild dependencies for every request.
    """

    store: ReportStore
    config: AppConfig

    def services(self, config: AppConfig | None = None) -> "AppServices":
        """Summary: Build services, optionally under per-invocation config overrides.

        Importance: `--cap` and `--seed` change the config without reopening the store.
        Alternatives: Rebuild the whole context per invocation.
        """

        active = config or self.config
        archive = ReportArchive(store=self.store, enabled=active.cache_reports)
        return AppServices(
            checks=CheckService(config=active, archive=archive),
            search=SearchService(config=active, archive=archive),
            convert=ConvertService(config=active),
            bisections=BisectionService(config=active),
            cover=CoverService(config=active),
            roundtrip=RoundtripService(config=active),
            archive=archive,
            config=active,
        )


@dataclass(frozen=True)
class AppServices:
    """Summary: Bundle of core services for OpenQuantal.

    Importance: Simplifies passing dependencies to the CLI or API layers.
    Alternatives: Use a dependency injection container.
    """

    checks: CheckService
    search: SearchService
    convert: ConvertService
    bisections: BisectionService
    cover: CoverService
    roundtrip: RoundtripService
    archive: ReportArchive
    config: AppConfig


def build_context(config: AppConfig) -> AppContext:
    """Summary: Build shared context with an initialized report store.

    Importance: Ensures the archive tables exist before any command runs.
    Alternatives: Create tables lazily on first write.
    """

    store = ReportStore(config.db_path)
    store.initialize()
    return AppContext(store=store, config=config)


def build_services(config: AppConfig) -> AppServices:
    """Build core services from configuration."""

    return build_context(config).services()
