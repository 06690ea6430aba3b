from fastapi import APIRouter

from . import engine, oracle, schemas

router = APIRouter(
    prefix="/sim",
    tags=["sim"],
)


# 🛰️ Summary only; the full trace is a CLI artifact
@router.post("/run")
def run(request: schemas.SimRequest) -> schemas.SimSummary:
    return engine.run(request.scenario, request.horizon_days, request.seed).summary


@router.post("/verify")
def verify(case: oracle.OracleCase, horizon_days: int = oracle.DEFAULT_HORIZON_DAYS) -> oracle.OracleReport:
    return oracle.verify_against_closed_form(case, horizon_days)
