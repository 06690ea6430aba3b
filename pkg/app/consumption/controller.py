from fastapi import APIRouter

from . import energy, schemas

router = APIRouter(
    prefix="/consumption",
    tags=["consumption"],
)


# 📊 Per-event and daily energy of a node profile
@router.post("/breakdown")
def get_breakdown(profile: schemas.NodeProfile) -> schemas.ConsumptionBreakdown:
    return energy.breakdown(profile)


@router.post("/losses")
def get_losses(losses: schemas.LossProfile) -> float:
    return energy.daily_losses(losses)


# 🔌 Regulator losses from its efficiency and quiescent draw
@router.post("/conversion-losses")
def get_conversion_losses(request: schemas.ConversionLossRequest) -> float:
    return energy.conversion_losses(request.consumed_per_day_j, request.efficiency, request.quiescent_power_mw)
