"""Summary: API integration tests.

Importance: Validates FastAPI endpoints against the check, search, and archive workflows.
Alternatives: Use manual curl testing only.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from openquantal.api import create_app
from openquantal.config import AppConfig

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _build_config(db_path: str) -> AppConfig:
    """Summary: Build an AppConfig for API tests.

    Importance: Ensures tests use isolated storage.
    Alternatives: Load AppConfig from environment variables.
    """

    return AppConfig(
        db_path=db_path,
        cache_reports=True,
        tensor_cap=8,
        embed_cap=32,
        search_cap=5,
        support_search_cap=16,
        acp_subset_cap=4,
        sample_count=64,
        seed=0,
        workers=1,
        api_host="127.0.0.1",
        api_port=8000,
        log_level="INFO",
        fixtures_dir=str(FIXTURES),
    )


def _client(tmp_path: Path) -> TestClient:
    return TestClient(create_app(_build_config(str(tmp_path / "test.db"))))


def _fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def test_api_health_and_catalog(tmp_path: Path) -> None:
    """Summary: Verify health and the catalog listing.

    Importance: Confirms the HTTP layer is wired to the catalog.
    Alternatives: Validate only the CLI catalog command.
    """

    client = _client(tmp_path)
    assert client.get("/health").json() == {"status": "ok"}
    listing = client.get("/catalog").json()
    names = [item["name"] for item in listing]
    assert names == sorted(names)
    assert {"name": "i2", "kind": "inverse_semigroup"}.items() <= next(
        item for item in listing if item["name"] == "i2"
    ).items()


def test_api_checks_catalog_instance(tmp_path: Path) -> None:
    """Summary: Verify a catalog instance is checked and an unknown one is 404.

    Importance: Catalog checks are the quickest regression check over HTTP.
    Alternatives: Post catalog documents explicitly.
    """

    client = _client(tmp_path)
    response = client.get("/catalog/two-chain")
    assert response.status_code == 200
    data = response.json()
    assert data["title"] == "two-chain"
    assert data["kind"] == "quantale"
    assert "timing" not in data
    assert client.get("/catalog/nope").status_code == 404


def test_api_check_document(tmp_path: Path) -> None:
    """Summary: Verify a posted frame document is checked and archived.

    Importance: The API accepts the same documents as structure files.
    Alternatives: Accept file uploads only.
    """

    client = _client(tmp_path)
    response = client.post("/check", json={"document": _fixture("m3.json")})
    assert response.status_code == 200
    data = response.json()
    assert data["exit_code"] == 1
    assert data["negative"] is True
    reports = client.get("/reports", params={"command": "check"}).json()
    assert len(reports) == 1
    assert reports[0]["title"] == "M3"
    assert reports[0]["exit_code"] == 1


def test_api_maps_errors_to_status_codes(tmp_path: Path) -> None:
    """Summary: Verify input errors are 400 and structure errors are 422.

    Importance: Clients distinguish malformed requests from invalid structures.
    Alternatives: Return 500 for every failure.
    """

    client = _client(tmp_path)
    assert client.post("/check", json={"document": {"kind": "ring"}}).status_code == 400
    meet_semilattice = {
        "kind": "frame",
        "elements": ["0", "a", "b"],
        "covers": [["0", "a"], ["0", "b"]],
    }
    response = client.post("/check", json={"document": meet_semilattice})
    assert response.status_code == 422
    assert client.post("/search", json={"pattern": "B∧X"}).status_code == 400
    assert client.post("/search", json={"pattern": ""}).status_code == 422


def test_api_search(tmp_path: Path) -> None:
    """Summary: Verify a search on the default frame returns a search report.

    Importance: The search endpoint shares the archive with the CLI.
    Alternatives: Run searches only from the CLI.
    """

    client = _client(tmp_path)
    response = client.post("/search", json={"frame": "powerset:2", "pattern": "B∧O∧U∧¬R"})
    assert response.status_code == 200
    data = response.json()
    assert data["command"] == "search"
    assert data["red_flags"] == 0
    frame_document = {"kind": "frame", "powerset": ["a"]}
    response = client.post("/search", json={"frame": frame_document, "pattern": "B"})
    assert response.status_code == 200
    assert len(client.get("/reports", params={"command": "search"}).json()) == 2
