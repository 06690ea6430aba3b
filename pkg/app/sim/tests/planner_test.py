import pytest

from app.battery.schemas import BatterySpec, BatteryState
from app.consumption.schemas import NodeProfile
from app.sim.planner import Dispatcher, charge_duration, plan_sortie, predict_depletion
from app.sim.schemas import DispatchPolicy, FleetNode, TelemetryReport, UavSpec

LCO = BatterySpec(chemistry_label="LCO", nominal_voltage_v=3.6, capacity_j=6480.0, charge_rate_c=1.0)


def node(node_id, x=0.0, y=0.0, stored_j=3240.0, spec=LCO):
    return FleetNode(id=node_id, position_m=(x, y), profile=NodeProfile(sleep_power_mw=0.025),
                     battery=BatteryState(spec=spec, stored_j=stored_j))


def report(day, stored_j, node_id="n"):
    return TelemetryReport(day=day, node_id=node_id, soc=stored_j / 6480.0, stored_j=stored_j)


def test_predict_depletion_extrapolates_the_drain():
    assert predict_depletion([report(0, 1000.0), report(10, 900.0)], 14) == pytest.approx(100.0)


def test_predict_depletion_flat_history():
    assert predict_depletion([report(day, 500.0) for day in range(5)], 14) is None


def test_predict_depletion_needs_two_days():
    assert predict_depletion([], 14) is None
    assert predict_depletion([report(3, 500.0)], 14) is None
    assert predict_depletion([report(3, 500.0), report(3, 400.0)], 14) is None


def test_predict_depletion_of_an_exact_linear_drain():
    history = [report(day, 2000.0 - 22.5 * day) for day in range(1, 31)]
    assert predict_depletion(history, 14) == pytest.approx(2000.0 / 22.5, abs=1e-6)


def test_predict_depletion_only_uses_the_window():
    history = [report(day, 5000.0) for day in range(1, 20)] + [report(day, 5000.0 - 100 * (day - 19))
                                                               for day in range(20, 25)]
    assert predict_depletion(history, 5) == pytest.approx(69.0)


def test_route_visits_collinear_nodes_near_to_far():
    due = [node("far", 200.0), node("near", 0.0), node("mid", 100.0)]
    plan = plan_sortie(due, UavSpec())
    assert [visit.node_id for visit in plan.visits] == ["near", "mid", "far"]
    assert [visit.transit_m for visit in plan.visits] == [0.0, 100.0, 100.0]
    assert plan.deferred == []


def test_route_breaks_ties_by_id():
    plan = plan_sortie([node("b", 50.0), node("a", -50.0)], UavSpec())
    assert [visit.node_id for visit in plan.visits] == ["a", "b"]


def test_single_node_gets_the_full_charge_time():
    plan = plan_sortie([node("n", 10.0)], UavSpec(sortie_energy_budget_j=1e9))
    assert plan.visits[0].charge_time_s == 300.0


def test_nearly_full_node_only_gets_its_headroom():
    assert charge_duration(node("n", stored_j=6300.0), UavSpec()) == pytest.approx(100.0)


def test_zero_budget_defers_everything():
    plan = plan_sortie([node("a", 10.0), node("b", 20.0)], UavSpec(sortie_energy_budget_j=0.0))
    assert plan.visits == []
    assert plan.deferred == ["a", "b"]
    assert plan.unreachable == ["a", "b"]


def test_budget_defers_what_does_not_fit():
    # one service is 540 / 0.85 + 180 * 300 J, about 54.6 kJ
    uav = UavSpec(sortie_energy_budget_j=120_000.0)
    plan = plan_sortie([node("a", 10.0), node("b", 20.0), node("c", 30.0)], uav)
    assert [visit.node_id for visit in plan.visits] == ["a", "b"]
    assert plan.deferred == ["c"]
    assert plan.unreachable == []
    assert plan.planned_energy_j <= uav.sortie_energy_budget_j


def test_node_too_far_for_any_sortie_is_unreachable():
    uav = UavSpec(sortie_energy_budget_j=100_000.0)
    plan = plan_sortie([node("near", 10.0), node("remote", 5000.0)], uav)
    assert [visit.node_id for visit in plan.visits] == ["near"]
    assert plan.deferred == ["remote"]
    assert plan.unreachable == ["remote"]


def test_fixed_calendar_dispatch():
    dispatcher = Dispatcher(DispatchPolicy(kind="fixed-calendar", interventions_per_year=12), [30, 60])
    nodes = [node("a"), node("b")]
    assert [n.id for n in dispatcher.due(nodes, 30)] == ["a", "b"]
    assert dispatcher.due(nodes, 31) == []


def test_non_rechargeable_nodes_are_never_due():
    alkaline = BatterySpec(chemistry_label="Alkaline", nominal_voltage_v=1.5, capacity_j=21000.0, charge_rate_c=0.0)
    dispatcher = Dispatcher(DispatchPolicy(kind="fixed-calendar"), [30])
    assert dispatcher.due([node("a", stored_j=100.0, spec=alkaline)], 30) == []


def test_soc_triggered_dispatch_on_low_report():
    dispatcher = Dispatcher(DispatchPolicy(kind="soc-triggered", soc_trigger=0.2))
    dispatcher.report(TelemetryReport(day=5, node_id="a", soc=0.5, stored_j=3240.0))
    assert not dispatcher.is_due("a", 5)
    dispatcher.report(TelemetryReport(day=6, node_id="a", soc=0.1, stored_j=648.0))
    assert dispatcher.is_due("a", 6)
    assert not dispatcher.is_due("silent", 6)


def test_soc_triggered_dispatch_on_predicted_depletion():
    dispatcher = Dispatcher(DispatchPolicy(kind="soc-triggered", soc_trigger=0.05, prediction_window_days=14))
    for day in range(1, 11):
        dispatcher.report(report(day, 2000.0 - 100.0 * day, node_id="a"))
    assert dispatcher.is_due("a", 10)


def test_soc_triggered_dispatch_respects_the_yearly_cap():
    dispatcher = Dispatcher(DispatchPolicy(kind="soc-triggered", soc_trigger=0.5, interventions_cap_per_year=1))
    dispatcher.charged("a", 10, 1000.0, 0.15)
    dispatcher.report(TelemetryReport(day=11, node_id="a", soc=0.1, stored_j=648.0))
    assert not dispatcher.is_due("a", 11)
    dispatcher.report(TelemetryReport(day=400, node_id="a", soc=0.1, stored_j=648.0))
    assert dispatcher.is_due("a", 400)
