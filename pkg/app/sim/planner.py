"""Which nodes the UAV visits, in what order, and for how long."""
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.battery.charging import charge_candidate
from app.battery.schemas import SECONDS_PER_HOUR
from app.wpt.link import ipt_efficiency

from .schemas import DispatchPolicy, FleetNode, PlannedVisit, SortiePlan, TelemetryReport, UavSpec

logger = logging.getLogger(__name__)


def distance(a: Tuple[float, float], b: Tuple[float, float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def predict_depletion(history: Sequence[TelemetryReport], window_days: int) -> Optional[float]:
    """Day the stored energy reaches zero, from a straight-line fit over the last window_days of reports.

    None when fewer than two reports fall in the window, when they all share one day,
    or when the fitted trend is flat or rising.
    """
    if not history:
        return None
    last_day = history[-1].day
    recent = [report for report in history if report.day > last_day - window_days]
    days = np.array([report.day for report in recent], dtype=float)
    if len(recent) < 2 or np.ptp(days) == 0:
        return None
    stored = np.array([report.stored_j for report in recent], dtype=float)
    slope, intercept = np.polyfit(days, stored, 1)
    if slope >= 0:
        return None
    return float(-intercept / slope)


def charge_duration(node: FleetNode, uav: UavSpec) -> float:
    """Time needed to refill the headroom at the battery's C-rate, capped by the UAV."""
    rate_j_s = node.battery.spec.capacity_j * node.battery.spec.charge_rate_c / SECONDS_PER_HOUR
    if rate_j_s <= 0:
        return 0.0
    headroom = node.battery.spec.capacity_j - node.battery.stored_j
    return min(uav.max_charge_time_s, headroom / rate_j_s)


def transit_energy(distance_m: float, uav: UavSpec) -> float:
    return distance_m / uav.transit_speed_m_s * uav.transit_power_w


def service_energy(node: FleetNode, uav: UavSpec, duration_s: float) -> float:
    """UAV energy spent at one node, assuming the link runs at its aligned peak."""
    headroom = node.battery.spec.capacity_j - node.battery.stored_j
    stored = min(charge_candidate(node.battery.spec, duration_s), headroom)
    return stored / ipt_efficiency(0.0, uav.wpt_model) + uav.hover_power_w * duration_s


def plan_sortie(due: Sequence[FleetNode], uav: UavSpec) -> SortiePlan:
    """Greedy nearest-neighbour tour from the base, ties broken by node id.

    A node joins the tour only if the budget still covers flying there, charging it
    and flying home; the rest are deferred. Nodes that would not fit even on a tour
    of their own are also listed as unreachable. Service energy is planned at the
    aligned peak efficiency, so a misaligned charge can push the flown sortie over
    the budget; the engine logs when it does.
    """
    base = uav.base_position_m
    budget = uav.sortie_energy_budget_j
    durations = {node.id: charge_duration(node, uav) for node in due}
    services = {node.id: service_energy(node, uav, durations[node.id]) for node in due}

    unreachable = sorted(
        node.id for node in due
        if budget <= 0 or 2 * transit_energy(distance(base, node.position_m), uav) + services[node.id] > budget
    )

    remaining: List[FleetNode] = sorted(due, key=lambda node: node.id)
    visits: List[PlannedVisit] = []
    deferred: List[str] = []
    position = base
    spent = 0.0
    transit = 0.0
    while remaining:
        nearest = min(remaining, key=lambda node: (distance(position, node.position_m), node.id))
        remaining.remove(nearest)
        leg_m = distance(position, nearest.position_m)
        leg = transit_energy(leg_m, uav)
        home = transit_energy(distance(nearest.position_m, base), uav)
        if budget > 0 and spent + leg + services[nearest.id] + home <= budget:
            visits.append(PlannedVisit(node_id=nearest.id, charge_time_s=durations[nearest.id], transit_m=leg_m))
            spent += leg + services[nearest.id]
            transit += leg
            position = nearest.position_m
        else:
            deferred.append(nearest.id)

    home = transit_energy(distance(position, base), uav)
    if deferred:
        logger.info("sortie defers %d node(s): %s", len(deferred), ", ".join(deferred))
    return SortiePlan(visits=visits, deferred=deferred, unreachable=unreachable,
                      transit_energy_j=transit + home, planned_energy_j=spent + home)


class Dispatcher:
    """Decides, day by day, which nodes are due for a visit.

    Keeps the telemetry the UAV operator has received so far; ground truth is never read
    for the soc-triggered decision.
    """

    def __init__(self, policy: DispatchPolicy, calendar: Sequence[int] = ()):
        self.policy = policy
        self.calendar = set(calendar)
        self.history: Dict[str, List[TelemetryReport]] = {}
        self.visits: Dict[str, List[int]] = {}

    def report(self, report: TelemetryReport) -> None:
        self.history.setdefault(report.node_id, []).append(report)

    def charged(self, node_id: str, day: int, stored_j: float, soc: float) -> None:
        # a recharge starts a new drain line
        self.visits.setdefault(node_id, []).append(day)
        self.history[node_id] = [TelemetryReport(day=day, node_id=node_id, soc=soc, stored_j=stored_j)]

    def visits_last_year(self, node_id: str, day: int) -> int:
        return sum(1 for visit in self.visits.get(node_id, []) if visit > day - 365)

    def is_due(self, node_id: str, day: int) -> bool:
        if self.policy.kind == "fixed-calendar":
            return day in self.calendar
        if self.visits_last_year(node_id, day) >= self.policy.interventions_cap_per_year:
            return False
        history = self.history.get(node_id, [])
        if not history:
            return False
        if history[-1].soc < self.policy.soc_trigger:
            return True
        predicted = predict_depletion(history, self.policy.prediction_window_days)
        return predicted is not None and predicted <= day + self.policy.prediction_window_days

    def due(self, nodes: Sequence[FleetNode], day: int) -> List[FleetNode]:
        return [node for node in nodes if node.battery.spec.rechargeable and self.is_due(node.id, day)]
