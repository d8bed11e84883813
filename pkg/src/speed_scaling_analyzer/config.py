"""Configuration management for the speed scaling analyzer."""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from pydantic import ValidationError

from .exceptions import ConfigError
from .models.config import RunConfig

# Flag and file keys that differ from the RunConfig field names.
KEY_ALIASES = {
    "L": "wake_energy",
    "policy": "policies",
    "seed": "seeds",
    "out": "output_dir",
}


class ConfigManager:
    """Builds a RunConfig from layered sources.

    Later sources win: model defaults, a JSON config file, environment
    variables SPEED_ANALYZER_<FIELD>, command-line flags. Config file keys
    are the flag names (``bf-dt`` or ``bf_dt``, ``L``, ``policy``, ...).
    """

    ENV_PREFIX = "SPEED_ANALYZER_"

    def __init__(self, environ: Optional[Mapping[str, str]] = None):
        """Initialize the configuration manager.

        Args:
            environ: Environment to read (os.environ when None).
        """
        self.environ = os.environ if environ is None else environ
        self.logger = logging.getLogger(self.__class__.__name__)

    @staticmethod
    def normalize_key(key: str) -> str:
        """Map a flag or file key onto a RunConfig field name."""
        key = key.strip().lstrip("-")
        if key in KEY_ALIASES:
            return KEY_ALIASES[key]
        key = key.replace("-", "_")
        return KEY_ALIASES.get(key, key)

    def normalize(self, values: Mapping[str, Any]) -> Dict[str, Any]:
        return {self.normalize_key(key): value for key, value in values.items()}

    def load_file(self, path: Union[str, Path]) -> Dict[str, Any]:
        """Read a JSON config file.

        Raises:
            ConfigError: If the file is missing, unreadable or not a JSON object.
        """
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"Config file not found: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read config file {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"Config file {path} must hold a JSON object")
        self.logger.debug(f"Loaded {len(data)} settings from {path}")
        return self.normalize(data)

    def load_env(self) -> Dict[str, str]:
        """Collect SPEED_ANALYZER_* variables that name a RunConfig field."""
        fields = set(RunConfig.model_fields)
        values = {}
        for name, value in self.environ.items():
            if not name.startswith(self.ENV_PREFIX):
                continue
            suffix = name[len(self.ENV_PREFIX):]
            key = self.normalize_key(suffix if suffix == "L" else suffix.lower())
            if key in fields:
                values[key] = value
            else:
                self.logger.warning(f"Ignoring unknown environment variable {name}")
        return values

    def build(self, config_file: Optional[Union[str, Path]] = None,
              overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
        """Merge every source into a validated RunConfig.

        Args:
            config_file: Optional JSON config file.
            overrides: Command-line values; None entries are ignored.

        Raises:
            ConfigError: If a source is unreadable or a value is invalid.
        """
        merged: Dict[str, Any] = {}
        if config_file is not None:
            merged.update(self.load_file(config_file))
        merged.update(self.load_env())
        if overrides:
            merged.update(self.normalize({k: v for k, v in overrides.items() if v is not None}))

        try:
            config = RunConfig.model_validate(merged)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}"
                for error in e.errors()
            )
            raise ConfigError(f"Invalid configuration: {problems}") from e
        self.logger.debug(f"Loaded configuration: {config.model_dump()}")
        return config
