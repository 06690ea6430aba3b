from typing import List, Optional

from fastapi import APIRouter, HTTPException

from . import link, schemas

router = APIRouter(
    prefix="/wpt",
    tags=["wpt"],
)


# 🧲 Default coil, or one recalibrated through (calibration_offset_mm, calibration_efficiency)
@router.get("/ipt-efficiency")
def get_ipt_efficiency(offset_mm: float, calibration_offset_mm: Optional[float] = None,
                       calibration_efficiency: Optional[float] = None) -> float:
    try:
        if calibration_offset_mm is None and calibration_efficiency is None:
            model = schemas.IptCoilModel()
        else:
            model = schemas.IptCoilModel.calibrated(
                offset_mm=schemas.CALIBRATION_OFFSET_MM if calibration_offset_mm is None else calibration_offset_mm,
                efficiency=schemas.CALIBRATION_EFFICIENCY if calibration_efficiency is None else calibration_efficiency,
            )
        return link.ipt_efficiency(offset_mm, model)
    except ValueError as error:
        raise HTTPException(status_code=422, detail=str(error))


@router.get("/watts-to-dbm")
def get_watts_to_dbm(power_w: float) -> float:
    try:
        return link.watts_to_dbm(power_w)
    except ValueError as error:
        raise HTTPException(status_code=422, detail=str(error))


@router.get("/rf-received-power")
def get_rf_received_power(tx_dbm: float, distance_m: float) -> float:
    try:
        return link.rf_received_power(tx_dbm, distance_m, schemas.RfLinkModel())
    except ValueError as error:
        raise HTTPException(status_code=422, detail=str(error))


# 📡 Can the technology move the energy in time?
@router.post("/assess")
def assess(requirement: schemas.TechnologyRequirement) -> schemas.TechnologyVerdict:
    return link.assess_technology(requirement)


@router.get("/localization")
def get_localization() -> List[schemas.LocalizationVerdict]:
    return link.assess_regimes(schemas.IptCoilModel())
