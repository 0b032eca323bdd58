from __future__ import annotations

import sqlite3
from contextlib import contextmanager
from typing import Optional

from .config import DATA_DIR

DB_PATH = DATA_DIR / "laghardy.db"


SCHEMA = """
CREATE TABLE IF NOT EXISTS runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    started_at TEXT DEFAULT CURRENT_TIMESTAMP,
    command TEXT NOT NULL,
    suite TEXT,
    seed INTEGER,
    status TEXT NOT NULL DEFAULT 'running',
    exit_code INTEGER,
    output_path TEXT,
    message TEXT
);
"""


def initialize() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    with sqlite3.connect(DB_PATH) as conn:
        conn.executescript(SCHEMA)


@contextmanager
def get_connection():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    conn = sqlite3.connect(DB_PATH)
    conn.row_factory = sqlite3.Row
    try:
        yield conn
    finally:
        conn.close()


def start_run(command: str, suite: Optional[str] = None, seed: Optional[int] = None) -> int:
    with get_connection() as conn:
        cur = conn.execute(
            "INSERT INTO runs (command, suite, seed) VALUES (?, ?, ?)",
            (command, suite, seed),
        )
        conn.commit()
        return int(cur.lastrowid)


def finish_run(
    run_id: int,
    status: str,
    exit_code: int,
    output_path: Optional[str] = None,
    message: Optional[str] = None,
) -> None:
    with get_connection() as conn:
        cur = conn.execute(
            "UPDATE runs SET status = ?, exit_code = ?, output_path = ?, message = ? WHERE id = ?",
            (status, exit_code, output_path, message, run_id),
        )
        conn.commit()
    if cur.rowcount == 0:
        raise LookupError(f"Run not found: id={run_id}")


def fetch_runs(suite: Optional[str] = None) -> list[dict]:
    with get_connection() as conn:
        if suite is None:
            cur = conn.execute("SELECT * FROM runs ORDER BY id")
        else:
            cur = conn.execute("SELECT * FROM runs WHERE suite = ? ORDER BY id", (suite,))
        return [dict(row) for row in cur.fetchall()]
