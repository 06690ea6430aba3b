from typing import List

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

SECONDS_PER_DAY = 86400.0


class ActivityEvent(BaseModel):
    """One periodic activity of a node, e.g. a LoRaWAN uplink or a sensor read."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    label: str
    power_mw: float = Field(ge=0)
    duration_s: float = Field(ge=0)
    occurrences_per_day: int = Field(ge=0)

    @property
    def active_seconds_per_day(self) -> float:
        return self.duration_s * self.occurrences_per_day


class LossProfile(BaseModel):
    """Parasitic daily losses: self-discharge, voltage conversion and leakage, in J/day."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    e_sd_j: float = Field(default=0.0, ge=0)
    e_conv_j: float = Field(default=0.0, ge=0)
    e_leak_j: float = Field(default=0.0, ge=0)


class NodeProfile(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    sleep_power_mw: float = Field(ge=0)
    events: List[ActivityEvent] = Field(default_factory=list)
    losses: LossProfile = Field(default_factory=LossProfile)

    @model_validator(mode="after")
    def active_time_fits_in_a_day(self) -> "NodeProfile":
        active = sum(event.active_seconds_per_day for event in self.events)
        if active > SECONDS_PER_DAY:
            raise ValueError(f"events are active {active} s per day, more than {SECONDS_PER_DAY:.0f} s")
        return self


class EventEnergy(BaseModel):
    label: str
    power_mw: float
    duration_s: float
    occurrences_per_day: int
    energy_per_occurrence_j: float
    energy_per_day_j: float


class ConsumptionBreakdown(BaseModel):
    events: List[EventEnergy]
    sleep_seconds: float
    sleep_energy_j: float
    consumed_per_day_j: float
    losses_per_day_j: float

    @computed_field
    @property
    def total_per_day_j(self) -> float:
        return self.consumed_per_day_j + self.losses_per_day_j


class ConversionLossRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    consumed_per_day_j: float = Field(ge=0)
    efficiency: float = Field(gt=0, le=1)
    quiescent_power_mw: float = Field(default=0.0, ge=0)
