"""Summary: SQLite report archive for OpenQuantal.

Importance: Keeps a history of runs and serves repeated checks from cache.
Alternatives: Write report files next to each structure file.
"""

from __future__ import annotations

import json
import logging
import sqlite3
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StoredReport:
    """Summary: Archived report with database identifier.

    Importance: Lets `history` list runs and the cache return a previous payload.
    Alternatives: Store only the exit code of each run.
    """

    id: int
    cache_key: str
    command: str
    title: str
    kind: str
    exit_code: int
    created_at: str
    payload: dict[str, Any]


class ReportStore:
    """Summary: SQLite-backed archive of command reports keyed by an input digest.

    Importance: Enables local-first persistence without a server.
    Alternatives: Use an ORM or a key-value cache.
    """

    def __init__(self, db_path: str) -> None:
        self._db_path = Path(db_path)

    def initialize(self) -> None:
        """Summary: Create tables if they do not exist.

        Importance: Ensures the archive is ready before the first run.
        Alternatives: Run migrations using a dedicated migration tool.
        """

        with self._connection() as connection:
            cursor = connection.cursor()
            cursor.execute(
                """
                CREATE TABLE IF NOT EXISTS reports (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    cache_key TEXT NOT NULL,
                    command TEXT NOT NULL,
                    title TEXT NOT NULL,
                    kind TEXT NOT NULL,
                    exit_code INTEGER NOT NULL,
                    created_at TEXT NOT NULL,
                    payload TEXT NOT NULL
                )
                """
            )
            cursor.execute(
                "CREATE INDEX IF NOT EXISTS reports_cache_key ON reports (cache_key)"
            )
            connection.commit()

    def save_report(
        self,
        cache_key: str,
        command: str,
        title: str,
        kind: str,
        exit_code: int,
        payload: dict[str, Any],
    ) -> int:
        """Summary: Archive a report payload and return its identifier.

        Importance: Every run is kept, so the history shows repeated checks too.
        Alternatives: Upsert on cache_key and keep only the latest run.
        """

        created_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
        with self._connection() as connection:
            cursor = connection.cursor()
            cursor.execute(
                """
                INSERT INTO reports
                    (cache_key, command, title, kind, exit_code, created_at, payload)
                VALUES (?, ?, ?, ?, ?, ?, ?)
                """,
                (
                    cache_key,
                    command,
                    title,
                    kind,
                    exit_code,
                    created_at,
                    json.dumps(payload, ensure_ascii=False),
                ),
            )
            connection.commit()
            report_id = int(cursor.lastrowid)
        logger.debug("Archived %s report %d for %s", command, report_id, title)
        return report_id

    def find_report(self, cache_key: str) -> StoredReport | None:
        """Return the most recent report stored under `cache_key`, if any."""

        with self._connection() as connection:
            cursor = connection.cursor()
            cursor.execute(
                """
                SELECT id, cache_key, command, title, kind, exit_code, created_at, payload
                FROM reports
                WHERE cache_key = ?
                ORDER BY id DESC
                LIMIT 1
                """,
                (cache_key,),
            )
            row = cursor.fetchone()
        return _stored(row) if row else None

    def list_reports(self, limit: int, command: str | None = None) -> list[StoredReport]:
        """Summary: List recent reports, newest first.

        Importance: Backs the `history` command and the reports endpoint.
        Alternatives: Read the archive with the sqlite3 shell.
        """

        with self._connection() as connection:
            cursor = connection.cursor()
            if command is None:
                cursor.execute(
                    """
                    SELECT id, cache_key, command, title, kind, exit_code, created_at, payload
                    FROM reports
                    ORDER BY id DESC
                    LIMIT ?
                    """,
                    (limit,),
                )
            else:
                cursor.execute(
                    """
                    SELECT id, cache_key, command, title, kind, exit_code, created_at, payload
                    FROM reports
                    WHERE command = ?
                    ORDER BY id DESC
                    LIMIT ?
                    """,
                    (command, limit),
                )
            rows = cursor.fetchall()
        return [_stored(row) for row in rows]

    @contextmanager
    def _connection(self) -> Iterator[sqlite3.Connection]:
        """Summary: Context manager for SQLite connections.

        Importance: Ensures connections are closed cleanly after use.
        Alternatives: Keep a single long-lived connection.
        """

        connection = sqlite3.connect(self._db_path)
        try:
            yield connection
        finally:
            connection.close()


def _stored(row: tuple[Any, ...]) -> StoredReport:
    *fields, payload = row
    return StoredReport(*fields, payload=json.loads(payload))
