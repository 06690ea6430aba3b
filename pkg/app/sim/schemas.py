from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.battery.schemas import BatteryState
from app.consumption.schemas import NodeProfile
from app.wpt.schemas import AlignmentModel, IptCoilModel

ReportMode = Literal["every-uplink", "threshold"]
PolicyKind = Literal["fixed-calendar", "soc-triggered"]


class FleetNode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str
    position_m: Tuple[float, float] = (0.0, 0.0)
    profile: NodeProfile
    battery: BatteryState
    report_mode: ReportMode = "every-uplink"
    # SoC below which a threshold-mode node starts reporting
    report_threshold: Optional[float] = Field(default=None, gt=0, lt=1)

    @model_validator(mode="after")
    def threshold_for_threshold_mode(self) -> "FleetNode":
        if self.report_mode == "threshold" and self.report_threshold is None:
            raise ValueError(f"node {self.id}: threshold reporting needs report_threshold")
        return self


class UavSpec(BaseModel):
    """Charging UAV. Transit and hover figures only feed the UAV-side energy columns."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    sortie_energy_budget_j: float = Field(default=400_000.0, ge=0)
    transit_speed_m_s: float = Field(default=10.0, gt=0)
    transit_power_w: float = Field(default=200.0, gt=0)
    hover_power_w: float = Field(default=180.0, gt=0)
    # at most 5 minutes per node
    max_charge_time_s: float = Field(default=300.0, gt=0)
    wpt_model: IptCoilModel = Field(default_factory=IptCoilModel)
    alignment: AlignmentModel = Field(default_factory=lambda: AlignmentModel.for_regime("rtk"))
    base_position_m: Tuple[float, float] = (0.0, 0.0)


class DispatchPolicy(BaseModel):
    """fixed-calendar visits every node on days floor(k * 365 / n);
    soc-triggered visits nodes whose reported SoC or predicted depletion calls for it.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: PolicyKind = "fixed-calendar"
    interventions_per_year: int = Field(default=12, ge=1, le=365)
    soc_trigger: float = Field(default=0.2, gt=0, lt=1)
    prediction_window_days: int = Field(default=14, ge=2)
    interventions_cap_per_year: int = Field(default=12, ge=1)


class FleetScenario(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    nodes: List[FleetNode] = Field(min_length=1)
    uav: UavSpec = Field(default_factory=UavSpec)
    policy: DispatchPolicy = Field(default_factory=DispatchPolicy)
    # default drains first, then charges (pessimistic ordering)
    charge_before_consumption: bool = False

    @model_validator(mode="after")
    def unique_node_ids(self) -> "FleetScenario":
        ids = [node.id for node in self.nodes]
        duplicates = sorted({node_id for node_id in ids if ids.count(node_id) > 1})
        if duplicates:
            raise ValueError(f"duplicate node ids: {duplicates}")
        return self


class TelemetryReport(BaseModel):
    day: int
    node_id: str
    soc: float
    stored_j: float


class DayRecord(BaseModel):
    day: int
    node_id: str
    soc: float = Field(ge=0, le=1)
    stored_j: float


class InterventionRecord(BaseModel):
    day: int
    node_id: str
    offset_mm: float
    efficiency: float
    stored_j: float
    uav_spent_j: float
    duration_s: float
    aligned: bool


class PlannedVisit(BaseModel):
    node_id: str
    charge_time_s: float
    transit_m: float


class SortiePlan(BaseModel):
    visits: List[PlannedVisit]
    # includes the unreachable ones
    deferred: List[str]
    unreachable: List[str]
    transit_energy_j: float
    planned_energy_j: float


class SortieRecord(BaseModel):
    day: int
    visited: List[str]
    deferred: List[str]
    unreachable: List[str]
    transit_energy_j: float


class NodeSummary(BaseModel):
    depletion_day: Optional[int] = None
    min_soc: float
    interventions: int
    telemetry_reports: int
    equivalent_cycles: float


class SimSummary(BaseModel):
    horizon_days: int
    seed: int
    nodes: Dict[str, NodeSummary]
    total_uav_energy_j: float

    @property
    def depletion_days(self) -> Dict[str, Optional[int]]:
        return {node_id: node.depletion_day for node_id, node in self.nodes.items()}


class SimTrace(BaseModel):
    days: List[DayRecord]
    interventions: List[InterventionRecord]
    sorties: List[SortieRecord]
    summary: SimSummary


class SimRequest(BaseModel):
    scenario: FleetScenario
    horizon_days: int = Field(ge=1)
    seed: int = 0
