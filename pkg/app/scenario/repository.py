"""Loading, saving and hashing scenario documents; bundled presets."""
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, List, Optional

import yaml
from pydantic import ValidationError

from app.errors import ConfigError, UnknownPresetError
from app.settings import Settings, get_settings

from .schemas import ScenarioConfig

logger = logging.getLogger(__name__)

PRESET_SUFFIX = ".yaml"


def key_path(error: ValidationError) -> str:
    location = error.errors()[0]["loc"]
    return ".".join(str(part) for part in location) or "<root>"


def parse_config(data: Any) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ConfigError("a scenario document must be a mapping", key_path="<root>")
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as error:
        raise ConfigError(error.errors()[0]["msg"], key_path=key_path(error)) from error


def load_config(path: Path) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as error:
        raise ConfigError(f"cannot read scenario file {path}: {error.strerror}") from error
    except yaml.YAMLError as error:
        raise ConfigError(f"{path} is not valid YAML: {error}") from error
    logger.debug("loaded scenario from %s", path)
    return parse_config(data)


def dump_config(config: ScenarioConfig) -> str:
    return yaml.safe_dump(config.model_dump(mode="json", exclude_none=True), sort_keys=False)


def config_hash(config: ScenarioConfig) -> str:
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def list_presets(settings: Optional[Settings] = None) -> List[str]:
    preset_dir = (settings or get_settings()).preset_dir
    if not preset_dir.is_dir():
        return []
    return sorted(path.stem for path in preset_dir.glob(f"*{PRESET_SUFFIX}"))


def load_preset(name: str, settings: Optional[Settings] = None) -> ScenarioConfig:
    settings = settings or get_settings()
    path = settings.preset_dir / f"{name}{PRESET_SUFFIX}"
    if not path.is_file():
        raise UnknownPresetError(f"unknown preset {name!r}, expected one of {list_presets(settings)}")
    logger.info("using preset %s from %s", name, settings.preset_dir)
    return load_config(path)
