from fastapi import APIRouter, HTTPException

from . import equations, schemas

router = APIRouter(
    prefix="/provisioning",
    tags=["provisioning"],
)


@router.post("/autonomy")
def get_autonomy(params: schemas.ProvisioningParams) -> schemas.AutonomyResult:
    return equations.autonomy(params)


# 📐 Capacity above which the node never runs dry
@router.post("/size")
def get_size(request: schemas.SizingRequest) -> schemas.SizingResult:
    return equations.size(request.daily_energy_j, request.interventions_per_year,
                          request.charge_rate_c, request.charge_time_s)


@router.post("/link-power")
def get_link_power(params: schemas.ProvisioningParams) -> float:
    try:
        return equations.link_power(params)
    except ValueError as error:
        raise HTTPException(status_code=422, detail=str(error))
