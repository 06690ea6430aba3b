"""Cross-check of the day-stepped simulator against the closed-form provisioning model."""
import logging
import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.battery.schemas import BatterySpec, BatteryState
from app.consumption.energy import daily_consumption, daily_losses
from app.consumption.schemas import LossProfile, NodeProfile
from app.provisioning.equations import autonomy, calendar_depletion_day, min_capacity
from app.provisioning.schemas import AutonomyResult, ProvisioningParams
from app.wpt.schemas import AlignmentModel

from .engine import run
from .schemas import DispatchPolicy, FleetNode, FleetScenario, UavSpec

logger = logging.getLogger(__name__)

DEFAULT_HORIZON_DAYS = 3650
# non-depletion is only claimed after this many intervention intervals
MIN_INTERVALS = 10
# large enough that no single-node sortie is ever cut short
UNBOUNDED_BUDGET_J = 1e12

Verdict = Literal["agree", "non-depletion-confirmed", "discretization-limited", "disagree"]


class OracleCase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    capacity_j: float = Field(gt=0)
    charge_rate_c: float = Field(gt=0)
    charge_time_s: float = Field(gt=0)
    interventions_per_year: int = Field(ge=1, le=365)
    daily_energy_j: float = Field(gt=0)

    def params(self) -> ProvisioningParams:
        battery = BatterySpec(chemistry_label="oracle", nominal_voltage_v=3.6, capacity_j=self.capacity_j,
                              charge_rate_c=self.charge_rate_c)
        return ProvisioningParams(interventions_per_year=self.interventions_per_year,
                                  charge_time_s=self.charge_time_s, battery=battery,
                                  daily_energy_j=self.daily_energy_j)

    def scenario(self) -> FleetScenario:
        """Single full node with a constant drain, perfect alignment, calendar dispatch."""
        params = self.params()
        node = FleetNode(
            id="node-0",
            profile=NodeProfile(sleep_power_mw=0.0, losses=LossProfile(e_leak_j=self.daily_energy_j)),
            battery=BatteryState.full(params.battery),
        )
        uav = UavSpec(sortie_energy_budget_j=UNBOUNDED_BUDGET_J, max_charge_time_s=self.charge_time_s,
                      alignment=AlignmentModel.for_regime("rtk"))
        policy = DispatchPolicy(kind="fixed-calendar", interventions_per_year=self.interventions_per_year)
        return FleetScenario(nodes=[node], uav=uav, policy=policy)


class OracleReport(BaseModel):
    case: OracleCase
    horizon_days: int
    closed_form: AutonomyResult
    calendar_depletion_day: Optional[int]
    simulated_depletion_day: Optional[int]
    # how many days the averaged formula runs ahead of the simulation
    closed_form_lead_days: Optional[float]
    sizing_condition_holds: bool
    bridges_longest_interval: bool
    verdict: Verdict

    @property
    def passed(self) -> bool:
        return self.verdict != "disagree"


def case_from_scenario(scenario: FleetScenario) -> OracleCase:
    """The closed-form parameters of a scenario simple enough to be compared; ValueError otherwise."""
    problems = []
    if len(scenario.nodes) != 1:
        problems.append("more than one node")
    if scenario.policy.kind != "fixed-calendar":
        problems.append("dispatch is not fixed-calendar")
    if scenario.uav.alignment.fine_residual_sigma_mm != 0:
        problems.append("alignment is not perfect")
    if scenario.charge_before_consumption:
        problems.append("charges before consumption")
    node = scenario.nodes[0]
    if node.battery.stored_j != node.battery.spec.capacity_j:
        problems.append("node does not start full")
    if not node.battery.spec.rechargeable:
        problems.append("battery is not rechargeable")
    if problems:
        raise ValueError("scenario is not comparable with the closed form: " + "; ".join(problems))
    spec = node.battery.spec
    daily = daily_consumption(node.profile) + daily_losses(node.profile.losses)
    daily += spec.capacity_j * spec.self_discharge_per_year / 365.0
    return OracleCase(capacity_j=spec.capacity_j, charge_rate_c=spec.charge_rate_c,
                      charge_time_s=scenario.uav.max_charge_time_s,
                      interventions_per_year=scenario.policy.interventions_per_year, daily_energy_j=daily)


def min_horizon_days(interventions_per_year: int) -> int:
    return MIN_INTERVALS * math.ceil(365 / interventions_per_year)


def verify_against_closed_form(case: OracleCase, horizon_days: int = DEFAULT_HORIZON_DAYS,
                               seed: int = 0) -> OracleReport:
    """Run the simulator on a case and compare its depletion day with the interval-exact calendar.

    The averaged autonomy figure is reported, not compared: it spreads each charge over
    the year and so predicts depletion later than the sawtooth actually reaches zero.
    The horizon is stretched to at least MIN_INTERVALS intervention intervals.
    """
    horizon_days = max(horizon_days, min_horizon_days(case.interventions_per_year))
    params = case.params()
    closed_form = autonomy(params)
    calendar_day = calendar_depletion_day(params, horizon_days)
    trace = run(case.scenario(), horizon_days, seed)
    simulated_day = trace.summary.nodes["node-0"].depletion_day

    agree = (simulated_day is None and calendar_day is None) or (
        simulated_day is not None and calendar_day is not None and abs(simulated_day - calendar_day) <= 1)
    condition = case.capacity_j > min_capacity(case.daily_energy_j, case.interventions_per_year,
                                               case.charge_rate_c, case.charge_time_s)
    longest_interval = math.ceil(365 / case.interventions_per_year) + 1
    bridges = case.capacity_j > case.daily_energy_j * longest_interval

    if not agree:
        verdict = "disagree"
    elif condition and bridges:
        verdict = "non-depletion-confirmed" if simulated_day is None else "disagree"
    elif condition:
        verdict = "discretization-limited"
    else:
        verdict = "agree"
    lead = None
    if closed_form.days is not None and simulated_day is not None:
        lead = closed_form.days - simulated_day
    if verdict == "disagree":
        logger.error("simulator disagrees with the closed form: %s, simulated %s, calendar %s",
                     case, simulated_day, calendar_day)
    return OracleReport(case=case, horizon_days=horizon_days, closed_form=closed_form,
                        calendar_depletion_day=calendar_day, simulated_depletion_day=simulated_day,
                        closed_form_lead_days=lead, sizing_condition_holds=condition,
                        bridges_longest_interval=bridges, verdict=verdict)


def verify_scenario(scenario: FleetScenario, horizon_days: int = DEFAULT_HORIZON_DAYS,
                    seed: int = 0) -> OracleReport:
    return verify_against_closed_form(case_from_scenario(scenario), horizon_days, seed)
