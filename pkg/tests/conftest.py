"""Shared pytest fixtures for laghardy tests."""
from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Generator

import pytest

# Create a shared test base directory before any imports
# This ensures LAGHARDY_BASE_DIR is set before laghardy modules are imported
_TEST_BASE_DIR = Path(tempfile.gettempdir()) / "laghardy_test_shared"
_TEST_BASE_DIR.mkdir(exist_ok=True, parents=True)
os.environ["LAGHARDY_BASE_DIR"] = str(_TEST_BASE_DIR)
os.environ.setdefault("LAGHARDY_THREADS", "1")


@pytest.fixture(autouse=True)
def fresh_config() -> Generator[None, None, None]:
    """Drop the cached settings so each test reads config/settings.json afresh."""
    from laghardy.config import reset_config

    reset_config()
    yield
    reset_config()


@pytest.fixture
def temp_data_dir(tmp_path: Path) -> Path:
    """Create a temporary data directory."""
    data_dir = tmp_path / "data"
    data_dir.mkdir()
    return data_dir


@pytest.fixture
def temp_db_path(temp_data_dir: Path) -> Path:
    """Return path to a temporary database."""
    return temp_data_dir / "test_laghardy.db"


@pytest.fixture
def isolated_db(temp_data_dir: Path, temp_db_path: Path) -> Generator[Path, None, None]:
    """Point the run ledger at a temporary database."""
    from unittest.mock import patch

    with patch("laghardy.db.DATA_DIR", temp_data_dir), patch("laghardy.db.DB_PATH", temp_db_path):
        yield temp_db_path


@pytest.fixture
def sample_report_payload() -> dict:
    """A small report as it appears on disk."""
    return {
        "schema": 1,
        "command": "verify",
        "config": {"command": "verify", "suite": "norm-scaling", "alpha": [0.5], "seed": 0},
        "records": [
            {"kind": "kernel", "r": 0.9, "sup_norm": 1.2, "rescaled": 0.67},
            {"kind": "kernel", "r": 0.99, "sup_norm": 2.1, "rescaled": 0.66},
        ],
        "summary": {"kernel_ratio": 1.015},
        "assertions": [{"name": "norm-scaling[kernel]", "passed": True, "claim": "bounded", "detail": "", "budget": False}],
        "plot": {"x": "r", "y": "rescaled"},
        "version": "0.1.0",
        "timing": {"timestamp": "2026-01-01T00:00:00+00:00", "wall_clock_s": 0.5},
    }
