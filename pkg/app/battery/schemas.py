from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

SECONDS_PER_HOUR = 3600.0
DAYS_PER_YEAR = 365.0


class BatterySpec(BaseModel):
    """Chemistry parameters of one battery (pack).

    charge_rate_c is the C-rate in 1/h (1.0 fills an empty battery in one hour);
    0 marks a non-rechargeable chemistry.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    chemistry_label: str
    nominal_voltage_v: float = Field(gt=0)
    capacity_j: float = Field(gt=0)
    charge_rate_c: float = Field(ge=0)
    self_discharge_per_year: float = Field(default=0.0, ge=0, lt=1)
    cycle_life: Optional[int] = Field(default=None, gt=0)

    @property
    def rechargeable(self) -> bool:
        return self.charge_rate_c > 0

    @property
    def capacity_wh(self) -> float:
        return self.capacity_j / SECONDS_PER_HOUR


class BatteryState(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    spec: BatterySpec
    stored_j: float = Field(ge=0)
    cumulative_charged_j: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def stored_within_capacity(self) -> "BatteryState":
        if self.stored_j > self.spec.capacity_j:
            raise ValueError(f"stored_j {self.stored_j} exceeds capacity_j {self.spec.capacity_j}")
        return self

    @classmethod
    def full(cls, spec: BatterySpec) -> "BatteryState":
        return cls(spec=spec, stored_j=spec.capacity_j)

    @classmethod
    def at_soc(cls, spec: BatterySpec, soc: float) -> "BatteryState":
        if not 0.0 <= soc <= 1.0:
            raise ValueError(f"soc must be within [0, 1], got {soc}")
        return cls(spec=spec, stored_j=spec.capacity_j * soc)


class ChargeResult(BaseModel):
    state: BatteryState
    stored_j: float


class ChargeRequest(BaseModel):
    state: BatteryState
    duration_s: float = Field(ge=0)


class SelfDischargeRequest(BaseModel):
    state: BatteryState
    days: float = Field(ge=0)
