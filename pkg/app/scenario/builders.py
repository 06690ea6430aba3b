"""Turn a ScenarioConfig, plus command-line overrides, into the models the operations take."""
from typing import Any, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from app.battery.repository import Chemistry, build_spec, get_chemistry
from app.battery.schemas import BatterySpec, BatteryState
from app.consumption.schemas import NodeProfile
from app.errors import ConfigError
from app.provisioning.equations import daily_energy
from app.provisioning.schemas import ProvisioningParams
from app.sim.schemas import DispatchPolicy, FleetNode, FleetScenario, UavSpec

from .repository import key_path
from .schemas import BatteryConfig, FleetConfig, FleetNodeConfig, ScenarioConfig

Model = TypeVar("Model", bound=BaseModel)


def _validated(model_type: Type[Model], data: Any, prefix: str) -> Model:
    try:
        return model_type.model_validate(data)
    except ValidationError as error:
        raise ConfigError(error.errors()[0]["msg"], key_path=f"{prefix}.{key_path(error)}") from error


def chemistry_for(config: ScenarioConfig, name: Optional[str] = None) -> Chemistry:
    try:
        return get_chemistry(name or config.battery.chemistry, overrides=config.chemistries)
    except KeyError as error:
        raise ConfigError(str(error.args[0]), key_path="battery.chemistry") from error


def with_overrides(battery: BatteryConfig, capacity_j: Optional[float] = None,
                   charge_rate_c: Optional[float] = None, chemistry: Optional[str] = None) -> BatteryConfig:
    data = battery.model_dump()
    if capacity_j is not None:
        data.update(capacity_j=capacity_j, capacity_wh=None)
    if charge_rate_c is not None:
        data["charge_rate_c"] = charge_rate_c
    if chemistry is not None:
        data["chemistry"] = chemistry
    return _validated(BatteryConfig, data, "battery")


def battery_spec(config: ScenarioConfig, battery: Optional[BatteryConfig] = None) -> BatterySpec:
    battery = battery or config.battery
    chemistry = chemistry_for(config, battery.chemistry)
    if battery.self_discharge_per_year is not None:
        chemistry = chemistry.model_copy(update={"self_discharge_per_year": battery.self_discharge_per_year})
    try:
        return build_spec(chemistry, battery.capacity_in_joules, battery.charge_rate_c)
    except ValidationError as error:
        raise ConfigError(error.errors()[0]["msg"], key_path=f"battery.{key_path(error)}") from error


def node_daily_energy(config: ScenarioConfig, profile: Optional[NodeProfile] = None,
                      battery: Optional[BatteryConfig] = None) -> float:
    """Consumption plus losses plus the battery's self-discharge, J/day."""
    return daily_energy(profile or config.node, battery_spec(config, battery))


def provisioning_params(config: ScenarioConfig, interventions_per_year: Optional[int] = None,
                        charge_time_s: Optional[float] = None,
                        battery: Optional[BatteryConfig] = None) -> ProvisioningParams:
    battery = battery or config.battery
    data = {
        "interventions_per_year": (config.provisioning.interventions_per_year
                                   if interventions_per_year is None else interventions_per_year),
        "charge_time_s": config.provisioning.charge_time_s if charge_time_s is None else charge_time_s,
        "battery": battery_spec(config, battery),
        "daily_energy_j": node_daily_energy(config, battery=battery),
    }
    return _validated(ProvisioningParams, data, "provisioning")


def _default_fleet(config: ScenarioConfig, interventions_per_year: int, charge_time_s: float) -> FleetConfig:
    if interventions_per_year < 1:
        raise ConfigError("a simulated fleet needs at least one intervention per year",
                          key_path="provisioning.interventions_per_year")
    if charge_time_s <= 0:
        raise ConfigError("a simulated fleet needs a positive charge time", key_path="provisioning.charge_time_s")
    return FleetConfig(
        nodes=[FleetNodeConfig(id=config.name)],
        uav=UavSpec(max_charge_time_s=charge_time_s, wpt_model=config.wpt.ipt, alignment=config.wpt.alignment),
        policy=DispatchPolicy(kind="fixed-calendar", interventions_per_year=interventions_per_year),
    )


def _fleet_node(config: ScenarioConfig, node: FleetNodeConfig, default_battery: BatteryConfig) -> FleetNode:
    battery = node.battery or default_battery
    spec = battery_spec(config, battery)
    data = {
        "id": node.id,
        "position_m": node.position_m,
        "profile": node.profile or config.node,
        "battery": BatteryState.at_soc(spec, battery.initial_soc),
        "report_mode": node.report_mode,
        "report_threshold": node.report_threshold,
    }
    return _validated(FleetNode, data, f"fleet.nodes.{node.id}")


def fleet_scenario(config: ScenarioConfig, interventions_per_year: Optional[int] = None,
                   charge_time_s: Optional[float] = None,
                   battery: Optional[BatteryConfig] = None) -> FleetScenario:
    """The scenario's fleet, or a single node on the provisioning calendar when none is given.

    Overrides replace the dispatch calendar, the per-node charge time and the
    battery of every node that does not carry its own.
    """
    battery = battery or config.battery
    n = config.provisioning.interventions_per_year if interventions_per_year is None else interventions_per_year
    t = config.provisioning.charge_time_s if charge_time_s is None else charge_time_s
    fleet = config.fleet or _default_fleet(config, n, t)

    policy, uav = fleet.policy, fleet.uav
    if config.fleet is not None and interventions_per_year is not None:
        policy = _validated(DispatchPolicy, {**policy.model_dump(), "interventions_per_year": n}, "fleet.policy")
    if config.fleet is not None and charge_time_s is not None:
        uav = _validated(UavSpec, {**uav.model_dump(), "max_charge_time_s": t}, "fleet.uav")

    nodes = [_fleet_node(config, node, battery) for node in fleet.nodes]
    return _validated(FleetScenario, {
        "nodes": nodes,
        "uav": uav,
        "policy": policy,
        "charge_before_consumption": fleet.charge_before_consumption,
    }, "fleet")
