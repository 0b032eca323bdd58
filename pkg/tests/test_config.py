"""Unit tests for laghardy.config module."""
from __future__ import annotations

import json
import os
from pathlib import Path
from unittest.mock import patch

import pytest


class TestSettings:
    """Tests for the Settings dataclass."""

    def test_defaults_are_valid(self) -> None:
        """Default settings should pass validation."""
        from laghardy.config import Settings

        settings = Settings()
        settings.validate()

        assert settings.tol_1d == 1e-10
        assert settings.nmax_cap_2d == 200
        assert settings.r_series_max == 0.99

    def test_from_dict_rejects_unknown_keys(self) -> None:
        """Unknown keys should raise ConfigError naming the key."""
        from laghardy.config import Settings
        from laghardy.errors import ConfigError

        with pytest.raises(ConfigError) as excinfo:
            Settings.from_dict({"tol_1d": 1e-10, "colour": "blue"})

        assert excinfo.value.field == "colour"

    def test_rejects_nonpositive_tolerance(self) -> None:
        """A zero tolerance should be rejected."""
        from laghardy.config import Settings
        from laghardy.errors import ConfigError

        with pytest.raises(ConfigError) as excinfo:
            Settings.from_dict({"tol_2d": 0.0})

        assert excinfo.value.field == "tol_2d"

    def test_rejects_r_series_max_outside_unit_interval(self) -> None:
        """r_series_max must lie in (0, 1)."""
        from laghardy.config import Settings
        from laghardy.errors import ConfigError

        with pytest.raises(ConfigError):
            Settings.from_dict({"r_series_max": 1.0})

    def test_rejects_tail_gamma_above_half(self) -> None:
        """The tail rate cannot exceed the Gaussian rate of the weight."""
        from laghardy.config import Settings
        from laghardy.errors import ConfigError

        with pytest.raises(ConfigError) as excinfo:
            Settings.from_dict({"tail_gamma": 0.6})

        assert excinfo.value.field == "tail_gamma"

    def test_rejects_non_integer_caps(self) -> None:
        """Caps must be positive integers."""
        from laghardy.config import Settings
        from laghardy.errors import ConfigError

        with pytest.raises(ConfigError):
            Settings.from_dict({"series_term_cap": 2.5})


class TestConfig:
    """Tests for loading config/settings.json."""

    def test_writes_defaults_when_missing(self, tmp_path: Path) -> None:
        """A missing settings file should be created with the defaults."""
        from laghardy.config import Config

        settings_file = tmp_path / "settings.json"
        config = Config(settings_file)

        assert settings_file.exists()
        payload = json.loads(settings_file.read_text(encoding="utf-8"))
        assert payload["series_term_cap"] == 20000
        assert "threads" not in payload
        assert config.settings.series_term_cap == 20000

    def test_reads_overrides(self, tmp_path: Path) -> None:
        """Values in settings.json should override the defaults."""
        from laghardy.config import Config

        settings_file = tmp_path / "settings.json"
        settings_file.write_text(json.dumps({"nmax_cap_1d": 500}), encoding="utf-8")

        config = Config(settings_file)

        assert config.settings.nmax_cap_1d == 500
        assert config.settings.nmax_cap_2d == 200

    def test_invalid_json_raises_config_error(self, tmp_path: Path) -> None:
        """Malformed JSON should surface as ConfigError."""
        from laghardy.config import Config
        from laghardy.errors import ConfigError

        settings_file = tmp_path / "settings.json"
        settings_file.write_text("{not json", encoding="utf-8")

        with pytest.raises(ConfigError):
            Config(settings_file)

    def test_threads_from_environment(self, tmp_path: Path) -> None:
        """LAGHARDY_THREADS should set the worker count."""
        from laghardy.config import Config

        with patch.dict(os.environ, {"LAGHARDY_THREADS": "4"}):
            config = Config(tmp_path / "settings.json")

        assert config.settings.threads == 4

    def test_bad_threads_value(self, tmp_path: Path) -> None:
        """A non-integer thread count should raise ConfigError."""
        from laghardy.config import Config
        from laghardy.errors import ConfigError

        with patch.dict(os.environ, {"LAGHARDY_THREADS": "many"}):
            with pytest.raises(ConfigError) as excinfo:
                Config(tmp_path / "settings.json")

        assert excinfo.value.field == "LAGHARDY_THREADS"


class TestGetConfig:
    """Tests for the cached global config."""

    def test_returns_same_instance(self) -> None:
        """get_config() should cache its instance."""
        from laghardy.config import get_config

        assert get_config() is get_config()

    def test_reset_drops_instance(self) -> None:
        """reset_config() should force a reload."""
        from laghardy.config import get_config, reset_config

        first = get_config()
        reset_config()

        assert get_config() is not first

    def test_base_dir_follows_environment(self) -> None:
        """The test base directory should come from LAGHARDY_BASE_DIR."""
        from laghardy.config import BASE_DIR

        assert str(BASE_DIR) == os.environ["LAGHARDY_BASE_DIR"]
