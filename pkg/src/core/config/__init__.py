import logging
from pathlib import Path
from typing import Any

from pydantic import ValidationError as PydanticValidationError
from pydantic_settings import SettingsConfigDict

from src.domain.exceptions import ConfigError
from .app import AppSettings
from .baseline import BaselineSettings
from .encoding import EncodingSettings
from .paths import PathSettings
from .simulation import SimulationSettings
from .training import TrainingSettings

logger = logging.getLogger(__name__)


class Settings(
    AppSettings,
    PathSettings,
    EncodingSettings,
    TrainingSettings,
    SimulationSettings,
    BaselineSettings,
):

    seed: int = 0

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="forbid",
    )

    def effective(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


def load_settings(config_path: Path | None = None, overrides: dict[str, Any] | None = None) -> Settings:
    """Config file < environment < overrides. A missing file or unknown key is a ConfigError."""
    if config_path is not None and not Path(config_path).is_file():
        raise ConfigError(f"Config file not found: {config_path}", key="config")

    try:
        settings = Settings(_env_file=config_path, **(overrides or {}))
    except PydanticValidationError as e:
        first = e.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigError(f"Invalid setting '{key}': {first['msg']}", key=key) from None

    logger.debug(f"Loaded settings from {config_path or 'environment'}")
    return settings


__all__ = ["Settings", "load_settings"]
