from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.battery.schemas import BatterySpec


class ProvisioningParams(BaseModel):
    """Inputs of the closed-form model.

    interventions_per_year is n; 0 means the node is never visited.
    daily_energy_j is E_Consumed + E_Losses.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    interventions_per_year: int = Field(ge=0)
    charge_time_s: float = Field(ge=0)
    battery: BatterySpec
    daily_energy_j: float = Field(ge=0)

    @model_validator(mode="after")
    def drain_or_visits(self) -> "ProvisioningParams":
        if self.interventions_per_year == 0 and self.daily_energy_j == 0:
            raise ValueError("a node with no daily energy and no interventions has no defined autonomy")
        return self


class AutonomyResult(BaseModel):
    outcome: Literal["finite", "unlimited"]
    # None when unlimited
    days: Optional[float] = None
    charged_per_intervention_j: float
    # None when the node is never visited
    required_min_j: Optional[float] = None
    # the battery alone bridges one interval
    bridges_interval: bool

    @property
    def unlimited(self) -> bool:
        return self.outcome == "unlimited"


BindingTerm = Literal["charge-rate", "bridging"]


class SizingResult(BaseModel):
    required_min_j: float
    bound_j: float
    bound_wh: float
    binding: BindingTerm


class AutonomyRow(BaseModel):
    capacity_j: float
    charge_rate_c: float
    charge_time_s: float
    result: AutonomyResult


class CapacityRow(BaseModel):
    profile: str
    chemistry: str
    charge_rate_c: float
    interventions_per_year: int
    required_min_j: float
    min_capacity_j: float


class SizingRequest(BaseModel):
    daily_energy_j: float = Field(ge=0)
    interventions_per_year: int = Field(ge=1)
    charge_rate_c: float = Field(gt=0)
    charge_time_s: float = Field(gt=0)
