"""SQLite storage for experiment reports."""

from __future__ import annotations

import json
import sqlite3
from contextlib import contextmanager
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path

SCHEMA = """
CREATE TABLE IF NOT EXISTS runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    run_id TEXT NOT NULL,
    command TEXT NOT NULL,
    seed TEXT NOT NULL,       -- 64-bit unsigned, beyond SQLite INTEGER
    status TEXT NOT NULL,
    wall_clock_seconds REAL NOT NULL,
    timestamp_start TEXT NOT NULL,
    timestamp_end TEXT NOT NULL,
    config_hash TEXT NOT NULL,
    anomalies TEXT NOT NULL,  -- JSON array
    reports TEXT NOT NULL,    -- JSON array
    config TEXT NOT NULL,     -- JSON object
    error TEXT,               -- nullable
    created_at TEXT NOT NULL DEFAULT CURRENT_TIMESTAMP,
    UNIQUE (run_id, command, config_hash)
);

CREATE INDEX IF NOT EXISTS idx_runs_run_id ON runs(run_id);
CREATE INDEX IF NOT EXISTS idx_runs_status ON runs(status);
CREATE INDEX IF NOT EXISTS idx_runs_command ON runs(command);
CREATE INDEX IF NOT EXISTS idx_runs_config_hash ON runs(config_hash);
"""


class ReportStore:
    """Experiment runs keyed by (run_id, command, config_hash).

    Run ids only depend on the seed, so the config hash tells apart runs of
    one command at different settings; an identical rerun replaces its row.
    """

    def __init__(self, db_path: Path) -> None:
        self.db_path = db_path
        db_path.parent.mkdir(parents=True, exist_ok=True)
        with self._connect() as conn:
            conn.executescript(SCHEMA)

    @contextmanager
    def _connect(self) -> Iterator[sqlite3.Connection]:
        conn = sqlite3.connect(self.db_path, timeout=30.0)
        conn.row_factory = sqlite3.Row
        try:
            yield conn
            conn.commit()
        finally:
            conn.close()

    def insert_run(self, run: dict[str, Any]) -> None:
        with self._connect() as conn:
            conn.execute(
                """
                INSERT OR REPLACE INTO runs (
                    run_id, command, seed, status, wall_clock_seconds,
                    timestamp_start, timestamp_end, config_hash,
                    anomalies, reports, config, error
                ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                """,
                (
                    run["run_id"],
                    run["command"],
                    str(run["seed"]),
                    run["status"],
                    run["wall_clock_seconds"],
                    run["timestamp_start"],
                    run["timestamp_end"],
                    run.get("config_hash", ""),
                    json.dumps(run.get("anomalies", [])),
                    json.dumps(run.get("reports", [])),
                    json.dumps(run.get("config", {})),
                    run.get("error"),
                ),
            )

    def _row_to_dict(self, row: sqlite3.Row) -> dict[str, Any]:
        return {
            "run_id": row["run_id"],
            "command": row["command"],
            "seed": int(row["seed"]),
            "status": row["status"],
            "wall_clock_seconds": row["wall_clock_seconds"],
            "timestamp_start": row["timestamp_start"],
            "timestamp_end": row["timestamp_end"],
            "config_hash": row["config_hash"],
            "anomalies": json.loads(row["anomalies"]),
            "reports": json.loads(row["reports"]),
            "config": json.loads(row["config"]),
            "error": row["error"],
        }

    def get_run(
        self, run_id: str, command: str | None = None, config_hash: str | None = None
    ) -> dict[str, Any] | None:
        """Latest run with this id, optionally restricted to one command and config."""
        query = "SELECT * FROM runs WHERE run_id = ?"
        params: list[Any] = [run_id]
        if command:
            query += " AND command = ?"
            params.append(command)
        if config_hash:
            query += " AND config_hash = ?"
            params.append(config_hash)
        query += " ORDER BY id DESC LIMIT 1"
        with self._connect() as conn:
            row = conn.execute(query, params).fetchone()
            return self._row_to_dict(row) if row else None

    def get_runs(
        self,
        limit: int = 100,
        offset: int = 0,
        status: str | None = None,
        command: str | None = None,
    ) -> list[dict[str, Any]]:
        query = "SELECT * FROM runs WHERE 1=1"
        params: list[Any] = []

        if status:
            query += " AND status = ?"
            params.append(status)
        if command:
            query += " AND command = ?"
            params.append(command)

        query += " ORDER BY id DESC LIMIT ? OFFSET ?"
        params.extend([limit, offset])

        with self._connect() as conn:
            rows = conn.execute(query, params).fetchall()
            return [self._row_to_dict(row) for row in rows]

    def count_runs(self) -> int:
        with self._connect() as conn:
            return conn.execute("SELECT COUNT(*) FROM runs").fetchone()[0]
