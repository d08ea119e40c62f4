#!/usr/bin/env python3
"""
Configuration Manager for the perforated surfaces toolkit

This module holds the settings for every command, merges user files over the
defaults and applies environment overrides.
"""

import copy
import json
import os
from typing import Any, Dict, Optional

import dotenv
import yaml

from errors import ConfigError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "logging": {"level": "WARNING"},
    "endspace": {"max_rewrite_passes": 200},
    "covering": {"element_cap": 5000, "translation_radius": 10},
    "planegeom": {"profile_denominator": 40},
    "nonhopf": {"seed": 0, "suite_size": 100, "box": 4, "max_vertices": 6},
    "fractal": {"seed": 0, "sample_count": 10000, "witness_level": 6},
    "family": {"max_m": 8},
    "output": {"summary": False},
}

# (section, key, minimum) for every positive integer setting
INTEGER_SETTINGS = (
    ("endspace", "max_rewrite_passes", 1),
    ("covering", "element_cap", 1),
    ("covering", "translation_radius", 1),
    ("planegeom", "profile_denominator", 1),
    ("nonhopf", "seed", 0),
    ("nonhopf", "suite_size", 0),
    ("nonhopf", "box", 1),
    ("nonhopf", "max_vertices", 2),
    ("fractal", "seed", 0),
    ("fractal", "sample_count", 0),
    ("fractal", "witness_level", 1),
    ("family", "max_m", 1),
)

ENV_OVERRIDES = {
    "PERFORATE_LOG_LEVEL": (("logging", "level"),),
    "PERFORATE_ELEMENT_CAP": (("covering", "element_cap"),),
    "PERFORATE_SEED": (("nonhopf", "seed"), ("fractal", "seed")),
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigurationManager:
    """Manages toolkit settings including validation and storage"""

    def __init__(self, env_file: str = ".env") -> None:
        """Start from the built-in defaults"""
        self.env_file = env_file
        self.config: Dict[str, Dict[str, Any]] = copy.deepcopy(DEFAULTS)

    def get(self, section: str, key: str) -> Any:
        """Get one setting"""
        return self.config[section][key]

    def set(self, section: str, key: str, value: Any) -> None:
        self.config.setdefault(section, {})[key] = value

    def apply_env(self) -> None:
        """Apply environment overrides, falling back to the .env file"""
        for name, targets in ENV_OVERRIDES.items():
            raw = os.getenv(name) or (dotenv.get_key(self.env_file, name) if os.path.exists(self.env_file) else None)
            if raw is None:
                continue
            for section, key in targets:
                if key == "level":
                    self.set(section, key, raw.upper())
                else:
                    try:
                        self.set(section, key, int(raw))
                    except ValueError:
                        raise ConfigError(f"{name} must be an integer, got {raw!r}", f"{section}.{key}")
        self.validate()

    def validate(self) -> None:
        """Check types and ranges of every setting"""
        for section in DEFAULTS:
            if not isinstance(self.config.get(section), dict):
                raise ConfigError(f"section {section!r} must be a mapping", section)
        for section, key, minimum in INTEGER_SETTINGS:
            value = self.config[section].get(key)
            if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
                raise ConfigError(f"{section}.{key} must be an integer >= {minimum}, got {value!r}",
                                  f"{section}.{key}")
        level = self.config["logging"].get("level")
        if not isinstance(level, str) or level.upper() not in LOG_LEVELS:
            raise ConfigError(f"logging.level must be one of {', '.join(LOG_LEVELS)}, got {level!r}", "logging.level")
        self.config["logging"]["level"] = level.upper()
        if not isinstance(self.config["output"].get("summary"), bool):
            raise ConfigError("output.summary must be true or false", "output.summary")

    def to_json(self) -> str:
        """Convert configuration to JSON string"""
        return json.dumps(self.config, indent=2, sort_keys=True)

    def to_yaml(self) -> str:
        """Convert configuration to YAML string"""
        return yaml.dump(self.config)

    def _load(self, data: Optional[Dict[str, Any]]) -> None:
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a mapping of sections")
        self.config = _merge(DEFAULTS, data)
        self.validate()

    def load_from_json(self, json_string: str) -> None:
        """Load configuration from JSON string"""
        try:
            self._load(json.loads(json_string))
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON configuration: {e}")

    def load_from_yaml(self, yaml_string: str) -> None:
        """Load configuration from YAML string"""
        try:
            self._load(yaml.safe_load(yaml_string))
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML configuration: {e}")

    def load_from_file(self, file_path: str) -> None:
        """Load configuration from a file"""
        if not file_path.endswith(('.json', '.yaml', '.yml')):
            raise ConfigError("Config file must be JSON or YAML")
        try:
            with open(file_path, 'r') as f:
                text = f.read()
        except OSError as e:
            raise ConfigError(f"cannot read {file_path}: {e.strerror}")
        if file_path.endswith('.json'):
            self.load_from_json(text)
        else:
            self.load_from_yaml(text)
