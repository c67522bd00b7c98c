"""Summary: FastAPI surface for OpenQuantal.

Importance: Exposes checks, search, the catalog, and the report archive over HTTP.
Alternatives: Offer only the CLI.
"""

from __future__ import annotations

import logging
from typing import Any

import uvicorn
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from openquantal.app import build_context
from openquantal.catalog import CATALOG, catalog_names, load_entry
from openquantal.config import AppConfig
from openquantal.errors import (
    CapExceededError,
    InconsistencyError,
    InputError,
    PreconditionError,
    StructureError,
)
from openquantal.report import report_to_dict
from openquantal.structure_file import parse_document

logger = logging.getLogger(__name__)


class CheckRequest(BaseModel):
    """Summary: Request payload for checking a structure document.

    Importance: Accepts the same JSON document the structure files contain.
    Alternatives: Accept file uploads only.
    """

    document: dict[str, Any]
    roundtrip: bool = False
    use_cache: bool = True


class SearchRequest(BaseModel):
    """Summary: Request payload for an axiom-pattern search.

    Importance: The frame is either a family such as "powerset:2" or a frame document.
    Alternatives: Accept only powerset sizes.
    """

    frame: str | dict[str, Any] = Field(default="powerset:2")
    pattern: str = Field(min_length=1)
    use_cache: bool = True


def _status_for(exc: Exception) -> int:
    if isinstance(exc, InconsistencyError):
        return 500
    if isinstance(exc, (StructureError, PreconditionError)):
        return 422
    return 400


def create_app(config: AppConfig) -> FastAPI:
    """Summary: Create a FastAPI app wired to OpenQuantal services.

    Importance: Ensures the API layer shares the same configuration and storage as the CLI.
    Alternatives: Instantiate services globally outside the factory.
    """

    if not logging.getLogger().handlers:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    app = FastAPI(title="OpenQuantal API", version="0.1.0")
    services = build_context(config).services()

    def guarded(action: Any) -> dict[str, Any]:
        try:
            return report_to_dict(action())
        except (
            InputError,
            StructureError,
            PreconditionError,
            CapExceededError,
            InconsistencyError,
        ) as exc:
            logger.warning("Request failed: %s", exc)
            raise HTTPException(status_code=_status_for(exc), detail=str(exc)) from exc

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.get("/catalog")
    def list_catalog() -> list[dict[str, str]]:
        return [
            {"name": name, "kind": CATALOG[name].kind, "description": CATALOG[name].description}
            for name in catalog_names()
        ]

    @app.get("/catalog/{name}")
    def check_catalog(name: str, roundtrip: bool = False) -> dict[str, Any]:
        if name not in CATALOG:
            raise HTTPException(status_code=404, detail="Catalog instance not found")
        return guarded(lambda: services.checks.check(load_entry(name), roundtrip=roundtrip))

    @app.post("/check")
    def check(payload: CheckRequest) -> dict[str, Any]:
        return guarded(
            lambda: services.checks.check(
                parse_document(payload.document, "request"),
                roundtrip=payload.roundtrip,
                use_cache=payload.use_cache,
            )
        )

    @app.post("/search")
    def search(payload: SearchRequest) -> dict[str, Any]:
        def run() -> Any:
            frame = payload.frame
            if isinstance(frame, dict):
                structure = parse_document(frame, "request.frame")
                if structure.kind != "frame":
                    raise InputError("expected a frame document", location="request.frame")
                frame = structure.subject
            return services.search.search(frame, payload.pattern, use_cache=payload.use_cache)

        return guarded(run)

    @app.get("/reports")
    def list_reports(limit: int = 20, command: str | None = None) -> list[dict[str, Any]]:
        return [
            {
                "id": stored.id,
                "command": stored.command,
                "title": stored.title,
                "kind": stored.kind,
                "exit_code": stored.exit_code,
                "created_at": stored.created_at,
            }
            for stored in services.archive.history(limit, command)
        ]

    return app


def serve() -> None:
    """Run the API with uvicorn on the configured host and port."""

    config = AppConfig.from_env()
    uvicorn.run(create_app(config), host=config.api_host, port=config.api_port)
