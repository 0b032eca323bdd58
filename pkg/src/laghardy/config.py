from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .errors import ConfigError

# Base paths - can be overridden via environment variable for testing
BASE_DIR = Path(os.environ.get("LAGHARDY_BASE_DIR", Path(__file__).resolve().parent.parent.parent))
CONFIG_DIR = BASE_DIR / "config"
DATA_DIR = BASE_DIR / "data"
LOG_DIR = BASE_DIR / "logs"
REPORTS_DIR = DATA_DIR / "reports"
SETTINGS_FILE = CONFIG_DIR / "settings.json"

load_dotenv(CONFIG_DIR / ".env")


def ensure_dirs() -> None:
    for path in (CONFIG_DIR, DATA_DIR, LOG_DIR, REPORTS_DIR):
        path.mkdir(parents=True, exist_ok=True)


def _env_threads() -> int:
    raw = os.environ.get("LAGHARDY_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError("LAGHARDY_THREADS", f"expected a positive integer, got {raw!r}")


@dataclass
class Settings:
    tol_1d: float = 1e-10
    tol_2d: float = 1e-8
    nmax_cap_1d: int = 2000
    nmax_cap_2d: int = 200
    series_term_cap: int = 20000
    panel_doubling_cap: int = 12
    bessel_crossover: float = 20.0
    tail_gamma: float = 0.05
    boundary_eps: float = 1e-8
    fd_step: float = 1e-5
    r_series_max: float = 0.99
    trig_k_cap: int = 10**8
    threads: int = 1

    def validate(self) -> None:
        positive = ("tol_1d", "tol_2d", "bessel_crossover", "tail_gamma", "boundary_eps", "fd_step")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ConfigError(name, f"must be > 0, got {getattr(self, name)!r}")
        for name in ("nmax_cap_1d", "nmax_cap_2d", "series_term_cap", "panel_doubling_cap", "trig_k_cap", "threads"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(name, f"must be a positive integer, got {value!r}")
        if not 0.0 < self.r_series_max < 1.0:
            raise ConfigError("r_series_max", f"must lie in (0, 1), got {self.r_series_max!r}")
        if self.tail_gamma > 0.5:
            raise ConfigError("tail_gamma", "exceeds the Gaussian rate 1/2 of the weight")

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "Settings":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise ConfigError(unknown[0], "unknown setting")
        settings = cls(**payload)
        settings.validate()
        return settings


class Config:
    def __init__(self, settings_file: Optional[Path] = None) -> None:
        ensure_dirs()
        self.settings_file = settings_file or SETTINGS_FILE
        self.settings = self._load_settings(self.settings_file)
        self.settings.threads = _env_threads()

    @staticmethod
    def _load_settings(path: Path) -> Settings:
        if not path.exists():
            defaults = asdict(Settings())
            defaults.pop("threads")
            path.write_text(json.dumps(defaults, indent=2), encoding="utf-8")
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(path.name, f"invalid JSON at line {exc.lineno}: {exc.msg}")
        return Settings.from_dict(payload)


# Export for testing
__all__ = [
    "BASE_DIR",
    "CONFIG_DIR",
    "DATA_DIR",
    "LOG_DIR",
    "REPORTS_DIR",
    "SETTINGS_FILE",
    "Config",
    "Settings",
    "ensure_dirs",
    "get_config",
    "get_settings",
    "reset_config",
]


config: Optional[Config] = None


def get_config() -> Config:
    """Get or create the global config instance."""
    global config
    if config is None:
        config = Config()
    return config


def get_settings() -> Settings:
    return get_config().settings


def reset_config() -> None:
    global config
    config = None
