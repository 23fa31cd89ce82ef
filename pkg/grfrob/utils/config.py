# grfrob/utils/config.py

"""
Configuration loading with .env support
Defaults, then the packaged config.json, then a user JSON file, then
environment variables (highest priority)
"""

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from grfrob.utils.errors import CapExceededError, InvalidInputError

logger = logging.getLogger(__name__)

PACKAGE_CONFIG_DIR = Path(__file__).parent.parent / "config"

DEFAULTS: Dict[str, Any] = {
    "max_dim": 256,
    "max_group_order": 32,
    "max_prime": 97,
    "enumeration_cap": 2**16,
    "iso_random_factor": 64,
    "iso_exhaustive_cap": 2**20,
    "baer_trials": 200,
    "oracle_trials": 200,
    "seed": 0,
    "max_workers": 4,
    "corpus_max_dim": 64,
    "corpus_max_group_order": 8,
}

ENV_OVERRIDES = {
    "GRFROB_THREADS": "max_workers",
    "GRFROB_SEED": "seed",
    "GRFROB_MAX_DIM": "max_dim",
    "GRFROB_MAX_PRIME": "max_prime",
    "GRFROB_ENUMERATION_CAP": "enumeration_cap",
}


def _load_json(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidInputError(f"Error loading config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise InvalidInputError(f"Config file {path} must contain a JSON object")
    return data


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from multiple sources:
    1. .env file (current directory, project root or home)
    2. packaged config/config.json, then config_path if given
    3. Environment variables (override)
    """

    env_locations = [
        Path.cwd() / ".env",
        Path(__file__).parent.parent.parent / ".env",
        Path.home() / ".env",
    ]

    for env_file in env_locations:
        if env_file.exists():
            load_dotenv(env_file)
            logger.debug(f"Loaded environment from: {env_file}")
            break

    config: Dict[str, Any] = dict(DEFAULTS)

    packaged = PACKAGE_CONFIG_DIR / "config.json"
    if packaged.exists():
        config.update(_load_json(packaged))

    if config_path:
        if not os.path.exists(config_path):
            raise InvalidInputError(f"Config file not found: {config_path}")
        config.update(_load_json(Path(config_path)))
        logger.info(f"Loaded config from: {config_path}")

    for var, key in ENV_OVERRIDES.items():
        value = os.getenv(var)
        if value:
            try:
                config[key] = int(value)
            except ValueError:
                raise InvalidInputError(f"{var} must be an integer, got {value!r}") from None

    unknown = set(config) - set(DEFAULTS)
    if unknown:
        logger.warning(f"Ignoring unknown config keys: {sorted(unknown)}")

    return config


def load_suite_catalog() -> Dict[str, Dict[str, str]]:
    """Statement texts for the verification checks, keyed by check name."""
    with open(PACKAGE_CONFIG_DIR / "suites.yaml", "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    return data.get("checks", {})


@dataclass(frozen=True)
class Limits:
    """Caps and seeds passed explicitly to the core layer."""

    max_dim: int = DEFAULTS["max_dim"]
    max_group_order: int = DEFAULTS["max_group_order"]
    max_prime: int = DEFAULTS["max_prime"]
    enumeration_cap: int = DEFAULTS["enumeration_cap"]
    iso_random_factor: int = DEFAULTS["iso_random_factor"]
    iso_exhaustive_cap: int = DEFAULTS["iso_exhaustive_cap"]
    baer_trials: int = DEFAULTS["baer_trials"]
    oracle_trials: int = DEFAULTS["oracle_trials"]
    seed: int = DEFAULTS["seed"]

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "Limits":
        fields = cls.__dataclass_fields__
        return cls(**{k: int(v) for k, v in config.items() if k in fields})

    def check_algebra(self, algebra) -> None:
        if algebra.dim > self.max_dim:
            raise CapExceededError(f"algebra dimension {algebra.dim} exceeds max_dim={self.max_dim}")
        if algebra.group.order > self.max_group_order:
            raise CapExceededError(
                f"group order {algebra.group.order} exceeds max_group_order={self.max_group_order}"
            )
        if algebra.p > self.max_prime:
            raise CapExceededError(f"prime {algebra.p} exceeds max_prime={self.max_prime}")
