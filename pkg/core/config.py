"""
Configuration management for braidbook.
Handles defaults for handle reduction, FDTC estimation, output and the
verification sweeps, persisted as JSON under the XDG config directory.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)


class OutputFormat(Enum):
    TABLE = "table"
    JSON = "json"


@dataclass
class OrderingConfig:
    """Handle reduction configuration."""
    step_limit: int = 10 ** 6


@dataclass
class FdtcConfig:
    """FDTC estimation defaults; None derives the value from the strand count."""
    max_power: Optional[int] = None
    denominator_bound: Optional[int] = None
    workers: int = 1


@dataclass
class OutputConfig:
    """Output configuration."""
    format: str = OutputFormat.TABLE.value
    colors_enabled: bool = True
    table_k_cap: int = 50


@dataclass
class VerifyConfig:
    """Verification sweep configuration."""
    k_max: int = 10
    workers: int = 1
    # Symbolic Alexander polynomials and FDTC get expensive quickly in k.
    alexander_k_max: int = 3
    fdtc_k_max: int = 1


@dataclass
class AppConfig:
    """Main application configuration."""
    ordering: OrderingConfig = field(default_factory=OrderingConfig)
    fdtc: FdtcConfig = field(default_factory=FdtcConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)


_SECTIONS = ('ordering', 'fdtc', 'output', 'verify')


class ConfigManager:
    """Manages application configuration persistence."""

    def __init__(self, config_dir: Optional[Path] = None):
        self.config_dir = Path(config_dir) if config_dir else self._get_default_config_dir()
        self.config_file = self.config_dir / "config.json"
        self.config: AppConfig = AppConfig()
        self.load()

    def _get_default_config_dir(self) -> Path:
        """Get the default configuration directory."""
        xdg_config = os.environ.get("XDG_CONFIG_HOME")
        if xdg_config:
            return Path(xdg_config) / "braidbook"
        return Path.home() / ".config" / "braidbook"

    def load(self) -> None:
        """Load configuration from file."""
        if not self.config_file.exists():
            return
        try:
            with open(self.config_file, 'r') as f:
                data = json.load(f)
            if not isinstance(data, dict):
                raise ValueError("top level must be an object")
            self._apply_config_data(data)
        except (json.JSONDecodeError, ValueError, OSError) as e:
            logger.warning("Could not load config file %s: %s", self.config_file, e)

    def _apply_config_data(self, data: dict) -> None:
        """Apply loaded configuration data; unknown sections and keys are ignored."""
        for section, values in data.items():
            if section not in _SECTIONS or not isinstance(values, dict):
                logger.debug("ignoring config entry %r", section)
                continue
            config_section = getattr(self.config, section)
            for key, value in values.items():
                if hasattr(config_section, key):
                    setattr(config_section, key, value)
                else:
                    logger.debug("ignoring config key %s.%s", section, key)

    def save(self) -> None:
        """Save configuration to file."""
        self.config_dir.mkdir(parents=True, exist_ok=True)
        with open(self.config_file, 'w') as f:
            json.dump(self._serialize_config(), f, indent=2, sort_keys=True)

    def _serialize_config(self) -> dict:
        """Serialize configuration to dictionary."""
        return {section: asdict(getattr(self.config, section)) for section in _SECTIONS}

    def reset_to_defaults(self) -> None:
        """Reset configuration to defaults."""
        self.config = AppConfig()
        self.save()


__all__ = [
    'OutputFormat', 'OrderingConfig', 'FdtcConfig', 'OutputConfig',
    'VerifyConfig', 'AppConfig', 'ConfigManager',
]
