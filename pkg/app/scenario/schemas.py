"""Scenario documents: everything a command needs, in one strict YAML file.

Unit-bearing keys carry their unit as a suffix (_mw, _s, _j, _wh, _mm, _m);
unknown keys are rejected at every level.
"""
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.battery.repository import Chemistry
from app.battery.charging import wh_to_joules
from app.consumption.schemas import NodeProfile
from app.sim.schemas import DispatchPolicy, ReportMode, UavSpec
from app.wpt.schemas import AlignmentModel, IptCoilModel, RfLinkModel, TechnologyLimits, TechnologyRequirement


class StrictModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class BatteryConfig(StrictModel):
    chemistry: str = "lco"
    capacity_j: Optional[float] = Field(default=None, gt=0)
    capacity_wh: Optional[float] = Field(default=None, gt=0)
    # per-battery overrides of the chemistry entry
    charge_rate_c: Optional[float] = Field(default=None, ge=0)
    self_discharge_per_year: Optional[float] = Field(default=None, ge=0, lt=1)
    initial_soc: float = Field(default=1.0, ge=0, le=1)

    @model_validator(mode="after")
    def one_capacity(self) -> "BatteryConfig":
        if (self.capacity_j is None) == (self.capacity_wh is None):
            raise ValueError("give exactly one of capacity_j or capacity_wh")
        return self

    @property
    def capacity_in_joules(self) -> float:
        if self.capacity_j is not None:
            return self.capacity_j
        return wh_to_joules(self.capacity_wh)


class ProvisioningConfig(StrictModel):
    interventions_per_year: int = Field(default=12, ge=0)
    charge_time_s: float = Field(default=300.0, ge=0)


def _default_requirements() -> List[TechnologyRequirement]:
    return [
        TechnologyRequirement(energy_j=energy, time_s=300.0, technology=technology)
        for energy in (1000.0, 10000.0)
        for technology in ("IPT", "CPT", "RF")
    ]


class WptConfig(StrictModel):
    ipt: IptCoilModel = Field(default_factory=IptCoilModel)
    rf: RfLinkModel = Field(default_factory=RfLinkModel)
    alignment: AlignmentModel = Field(default_factory=lambda: AlignmentModel.for_regime("rtk"))
    limits: TechnologyLimits = Field(default_factory=TechnologyLimits)
    requirements: List[TechnologyRequirement] = Field(default_factory=_default_requirements)


class FleetNodeConfig(StrictModel):
    """A node of the fleet; profile and battery default to the scenario's own."""

    id: str
    position_m: Tuple[float, float] = (0.0, 0.0)
    profile: Optional[NodeProfile] = None
    battery: Optional[BatteryConfig] = None
    report_mode: ReportMode = "every-uplink"
    report_threshold: Optional[float] = Field(default=None, gt=0, lt=1)


class FleetConfig(StrictModel):
    nodes: List[FleetNodeConfig] = Field(min_length=1)
    uav: UavSpec = Field(default_factory=UavSpec)
    policy: DispatchPolicy = Field(default_factory=DispatchPolicy)
    charge_before_consumption: bool = False


class SweepConfig(StrictModel):
    """Parameter grids of the reproduced figures."""

    soc_capacities_wh: List[float] = Field(default_factory=lambda: [0.36, 1.80, 2.88], min_length=1)
    soc_horizon_days: int = Field(default=3650, ge=1)
    autonomy_capacities_wh: List[float] = Field(default_factory=lambda: [0.36, 1.80], min_length=1)
    autonomy_charge_rates_c: List[float] = Field(default_factory=lambda: [1.0, 2.0, 5.0, 10.0], min_length=1)
    charge_time_max_s: float = Field(default=1800.0, ge=0)
    charge_time_step_s: float = Field(default=30.0, gt=0)
    capacity_profiles: List[str] = Field(default_factory=lambda: ["tree-node", "gas-node"], min_length=1)
    # chemistry key and the C-rate it is swept at
    capacity_chemistries: Dict[str, float] = Field(default_factory=lambda: {"lco": 1.0, "lto": 10.0}, min_length=1)
    interventions_min: int = Field(default=1, ge=1)
    interventions_max: int = Field(default=52, ge=1)

    @model_validator(mode="after")
    def ordered_interventions(self) -> "SweepConfig":
        if self.interventions_max < self.interventions_min:
            raise ValueError("interventions_max must not be below interventions_min")
        return self

    @property
    def charge_times_s(self) -> List[float]:
        count = int(self.charge_time_max_s // self.charge_time_step_s)
        return [step * self.charge_time_step_s for step in range(count + 1)]


class ScenarioConfig(StrictModel):
    name: str
    description: Optional[str] = None
    node: NodeProfile
    battery: BatteryConfig
    provisioning: ProvisioningConfig = Field(default_factory=ProvisioningConfig)
    chemistries: Dict[str, Chemistry] = Field(default_factory=dict)
    wpt: WptConfig = Field(default_factory=WptConfig)
    # a single node at the base, visited on the provisioning calendar, when omitted
    fleet: Optional[FleetConfig] = None
    sweeps: SweepConfig = Field(default_factory=SweepConfig)
    horizon_days: int = Field(default=3650, ge=1)


class RunManifest(BaseModel):
    """Written next to every output; carries no timestamps so reruns match byte for byte."""

    command: str
    config_hash: str
    seed: Optional[int] = None
    artifacts: List[str]
    tool_version: str


