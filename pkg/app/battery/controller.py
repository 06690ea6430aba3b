from typing import List

from fastapi import APIRouter, Depends, HTTPException

from app.settings import Settings, get_settings

from . import charging, repository, schemas

router = APIRouter(
    prefix="/battery",
    responses={404: {"description": "Not found"}},
    tags=["battery"],
)


# 🔋 Catalog keys
@router.get("/chemistries")
def get_chemistries(settings: Settings = Depends(get_settings)) -> List[str]:
    return repository.list_chemistries(settings)


@router.get("/chemistries/{name}")
def get_chemistry(name: str, settings: Settings = Depends(get_settings)) -> repository.Chemistry:
    try:
        return repository.get_chemistry(name, settings)
    except KeyError:
        raise HTTPException(status_code=404, detail="Chemistry not found")


# ⚡ Charge for a duration, clamped to the headroom
@router.post("/charge")
def charge(request: schemas.ChargeRequest) -> schemas.ChargeResult:
    state, stored = charging.charge(request.state, request.duration_s)
    return schemas.ChargeResult(state=state, stored_j=stored)


@router.post("/self-discharge")
def self_discharge(request: schemas.SelfDischargeRequest) -> schemas.BatteryState:
    return charging.self_discharge(request.state, request.days)
