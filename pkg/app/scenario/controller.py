from typing import List

from fastapi import APIRouter, Depends, HTTPException

from app.errors import ConfigError, UnknownPresetError
from app.provisioning.equations import autonomy
from app.provisioning.schemas import AutonomyResult
from app.settings import Settings, get_settings

from . import builders, repository, schemas

router = APIRouter(
    prefix="/presets",
    responses={404: {"description": "Not found"}},
    tags=["presets"],
)


def _load(name: str, settings: Settings) -> schemas.ScenarioConfig:
    try:
        return repository.load_preset(name, settings)
    except UnknownPresetError:
        raise HTTPException(status_code=404, detail="Preset not found")
    except ConfigError as error:
        raise HTTPException(status_code=422, detail=str(error))


@router.get("")
def get_presets(settings: Settings = Depends(get_settings)) -> List[str]:
    return repository.list_presets(settings)


@router.get("/{name}")
def get_preset(name: str, settings: Settings = Depends(get_settings)) -> schemas.ScenarioConfig:
    return _load(name, settings)


# 🗓️ Autonomy of the preset's own battery and calendar
@router.get("/{name}/autonomy")
def get_preset_autonomy(name: str, settings: Settings = Depends(get_settings)) -> AutonomyResult:
    config = _load(name, settings)
    try:
        return autonomy(builders.provisioning_params(config))
    except ConfigError as error:
        raise HTTPException(status_code=422, detail=str(error))
