"""Workbench configuration management."""

import configparser
import os
from pathlib import Path

ENV_PREFIX = "DENFUSE_"


def _load_config(config_file: Path, template_file: Path) -> configparser.ConfigParser:
    """
    Load configuration from INI files.

    The checked-in template provides every default; a settings.ini under the
    data path overrides any subset of it.

    Returns a ConfigParser instance with the loaded configuration.
    """
    config = configparser.ConfigParser()

    if not template_file.exists():
        raise FileNotFoundError(
            f"Config template not found at {template_file}. "
            "This file should be checked into version control."
        )

    config.read([template_file, config_file])
    return config


def env(name: str, default: str | None = None) -> str | None:
    """Read a DENFUSE_-prefixed environment variable."""
    return os.getenv(f"{ENV_PREFIX}{name}", default)


# Determine data path - default output root for every command
DATA_PATH = Path(env("DATA_PATH") or Path(__file__).parent.parent.parent / "data")

# Config file location within data path
config_file_path = DATA_PATH / "config" / "settings.ini"

# Template file location (checked into version control)
template_file_path = Path(__file__).parent.parent.parent / "config.ini.template"

_config = _load_config(config_file_path, template_file_path)


class Settings:
    """Workbench settings loaded from INI config plus DENFUSE_ overrides."""

    # Monte Carlo worker processes
    WORKERS: int = int(env("WORKERS") or _config.getint("workbench", "workers"))

    LOG_LEVEL: str = _config.get("workbench", "log_level", fallback="INFO")

    # Time step whose per-iteration GOSPA is recorded (1-indexed)
    CONVERGENCE_STEP: int = _config.getint("report", "convergence_step", fallback=10)

    GOSPA_P: float = _config.getfloat("report", "gospa_p", fallback=1.0)
    GOSPA_ALPHA: float = _config.getfloat("report", "gospa_alpha", fallback=2.0)
    GOSPA_C: float = _config.getfloat("report", "gospa_c", fallback=50.0)

    DATA_PATH: Path = DATA_PATH

    @property
    def scenarios_path(self) -> Path:
        """Directory holding the shipped scenario files."""
        return Path(__file__).parent.parent / "harness" / "scenarios"

    @property
    def default_scenario(self) -> Path:
        """Scenario used when neither --scenario nor DENFUSE_SCENARIO is set."""
        override = env("SCENARIO")
        return Path(override) if override else self.scenarios_path / "desk.json"

    @property
    def output_path(self) -> Path:
        """Default output directory for reports and bundles."""
        override = env("OUT")
        return Path(override) if override else self.DATA_PATH / "runs"

    @property
    def seed_override(self) -> int | None:
        """Master seed from DENFUSE_SEED, if set."""
        value = env("SEED")
        return int(value) if value else None


# Global settings instance
settings = Settings()
