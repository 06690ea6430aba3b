"""Day-stepped fleet simulation.

Each day every node drains its consumption and losses, then its battery self-discharges,
then the UAV flies the day's sortie (or the sortie first, with charge_before_consumption).
A node whose stored energy reaches zero is depleted and stops sending telemetry.
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.battery.charging import charge, cycle_life_exceeded, discharge, equivalent_cycles, self_discharge, soc
from app.consumption.energy import daily_consumption, daily_losses
from app.provisioning.equations import intervention_days
from app.settings import get_settings
from app.wpt.link import ipt_efficiency, sample_alignment

from .planner import Dispatcher, plan_sortie
from .schemas import (DayRecord, FleetNode, FleetScenario, InterventionRecord, NodeSummary, SimSummary,
                      SimTrace, SortieRecord, TelemetryReport, UavSpec)

logger = logging.getLogger(__name__)


def execute_intervention(node: FleetNode, uav: UavSpec, duration_s: float, rng: np.random.Generator,
                         day: int) -> Tuple[FleetNode, InterventionRecord]:
    """Align over the node, draw the residual offset and charge for duration_s.

    A zero link efficiency means the alignment failed: nothing is stored but the
    UAV still pays for the hover.
    """
    if duration_s < 0 or duration_s > uav.max_charge_time_s:
        raise ValueError(f"charge time {duration_s} s outside [0, {uav.max_charge_time_s}] s")
    offset_mm = sample_alignment(uav.alignment, rng)
    efficiency = ipt_efficiency(offset_mm, uav.wpt_model)
    hover_j = uav.hover_power_w * duration_s
    if efficiency == 0:
        logger.warning("day %d: alignment over %s failed at %.1f mm offset", day, node.id, offset_mm)
        record = InterventionRecord(day=day, node_id=node.id, offset_mm=offset_mm, efficiency=0.0,
                                    stored_j=0.0, uav_spent_j=hover_j, duration_s=duration_s, aligned=False)
        return node, record
    battery, stored = charge(node.battery, duration_s)
    record = InterventionRecord(day=day, node_id=node.id, offset_mm=offset_mm, efficiency=efficiency,
                                stored_j=stored, uav_spent_j=stored / efficiency + hover_j,
                                duration_s=duration_s, aligned=True)
    return node.model_copy(update={"battery": battery}), record


class _NodeTally:
    def __init__(self, node: FleetNode):
        self.depletion_day: Optional[int] = None
        self.min_soc = soc(node.battery)
        self.interventions = 0
        self.telemetry_reports = 0
        self.cycle_warning_logged = False


def _wants_report(node: FleetNode, level: float) -> bool:
    if node.report_mode == "every-uplink":
        return True
    return level < node.report_threshold


def run(scenario: FleetScenario, horizon_days: int, seed: int) -> SimTrace:
    """Simulate the fleet for days 1..horizon_days; the same seed gives the same trace."""
    if horizon_days < 1:
        raise ValueError(f"horizon must be at least one day, got {horizon_days}")
    settings = get_settings()
    rng = np.random.default_rng(seed)
    uav = scenario.uav
    calendar = ()
    if scenario.policy.kind == "fixed-calendar":
        calendar = tuple(intervention_days(scenario.policy.interventions_per_year, horizon_days))
    dispatcher = Dispatcher(scenario.policy, calendar)

    nodes: Dict[str, FleetNode] = {node.id: node for node in scenario.nodes}
    order = [node.id for node in scenario.nodes]
    drains = {node.id: daily_consumption(node.profile) + daily_losses(node.profile.losses) for node in scenario.nodes}
    tallies = {node_id: _NodeTally(node) for node_id, node in nodes.items()}
    days: List[DayRecord] = []
    interventions: List[InterventionRecord] = []
    sorties: List[SortieRecord] = []
    uav_energy = 0.0
    logger.info("simulating %d node(s) for %d days, policy %s, seed %d",
                len(order), horizon_days, scenario.policy.kind, seed)

    def fly(day: int) -> float:
        due = dispatcher.due([nodes[node_id] for node_id in order], day)
        if not due:
            return 0.0
        plan = plan_sortie(due, uav)
        spent = plan.transit_energy_j
        for visit in plan.visits:
            node, record = execute_intervention(nodes[visit.node_id], uav, visit.charge_time_s, rng, day)
            nodes[visit.node_id] = node
            interventions.append(record)
            spent += record.uav_spent_j
            tally = tallies[visit.node_id]
            tally.interventions += 1
            dispatcher.charged(node.id, day, node.battery.stored_j, soc(node.battery))
            if not tally.cycle_warning_logged and cycle_life_exceeded(node.battery, settings.cycle_warning_fraction):
                tally.cycle_warning_logged = True
        if spent > uav.sortie_energy_budget_j:
            logger.warning("day %d: sortie spent %.0f J, over the %.0f J budget planned at peak link efficiency",
                           day, spent, uav.sortie_energy_budget_j)
        sorties.append(SortieRecord(day=day, visited=[visit.node_id for visit in plan.visits],
                                    deferred=plan.deferred, unreachable=plan.unreachable,
                                    transit_energy_j=plan.transit_energy_j))
        return spent

    for day in range(1, horizon_days + 1):
        if scenario.charge_before_consumption:
            uav_energy += fly(day)
        for node_id in order:
            node = nodes[node_id]
            battery, _ = discharge(node.battery, drains[node_id])
            battery = self_discharge(battery, 1)
            node = node.model_copy(update={"battery": battery})
            nodes[node_id] = node
            tally = tallies[node_id]
            level = soc(battery)
            tally.min_soc = min(tally.min_soc, level)
            if battery.stored_j == 0:
                if tally.depletion_day is None:
                    tally.depletion_day = day
                    logger.warning("node %s depleted on day %d", node_id, day)
                continue
            if _wants_report(node, level):
                tally.telemetry_reports += 1
                dispatcher.report(TelemetryReport(day=day, node_id=node_id, soc=level, stored_j=battery.stored_j))
        if not scenario.charge_before_consumption:
            uav_energy += fly(day)
        for node_id in order:
            battery = nodes[node_id].battery
            days.append(DayRecord(day=day, node_id=node_id, soc=soc(battery), stored_j=battery.stored_j))

    summary = SimSummary(
        horizon_days=horizon_days,
        seed=seed,
        nodes={
            node_id: NodeSummary(
                depletion_day=tallies[node_id].depletion_day,
                min_soc=tallies[node_id].min_soc,
                interventions=tallies[node_id].interventions,
                telemetry_reports=tallies[node_id].telemetry_reports,
                equivalent_cycles=equivalent_cycles(nodes[node_id].battery),
            )
            for node_id in order
        },
        total_uav_energy_j=uav_energy,
    )
    return SimTrace(days=days, interventions=interventions, sorties=sorties, summary=summary)
