"""One function per subcommand. Each prints its report and returns the exit code."""
import argparse
import logging
import math
from pathlib import Path
from typing import Dict, List, Optional

from app.battery.charging import amp_hours_to_joules, wh_to_joules
from app.battery.repository import get_chemistry
from app.battery.schemas import SECONDS_PER_HOUR
from app.consumption.energy import breakdown
from app.errors import ConfigError, InfeasibleError
from app.provisioning.equations import (autonomy, cells_required, daily_energy, min_charge_time, min_interventions,
                                       size, storage_for_autonomy)
from app.provisioning.sweeps import (AUTONOMY_HEADER, CAPACITY_HEADER, autonomy_records, capacity_records,
                                     format_number, sweep_autonomy_vs_charge_time, sweep_capacity_vs_interventions)
from app.scenario.builders import (battery_spec, chemistry_for, fleet_scenario, node_daily_energy,
                                   provisioning_params, with_overrides)
from app.scenario.repository import list_presets, load_config, load_preset
from app.scenario.schemas import BatteryConfig, ScenarioConfig
from app.settings import get_settings
from app.sim.engine import run
from app.sim.oracle import verify_scenario
from app.wpt.link import link_report

from .figures import render_lines
from .output import (INTERVENTION_HEADER, TRACE_HEADER, intervention_records, prepare_dir, summary_document,
                     trace_records, write_csv, write_json, write_manifest)

logger = logging.getLogger(__name__)

DEFAULT_PRESET = "tree-node"
FIGURES = ("soc", "autonomy-vs-time", "capacity-vs-n")
SOC_HEADER = ["capacity_wh", "day", "node_id", "soc", "stored_j"]


def load_scenario(args: argparse.Namespace) -> ScenarioConfig:
    if args.config:
        return load_config(Path(args.config))
    return load_preset(args.preset or DEFAULT_PRESET)


def _seed(args: argparse.Namespace) -> int:
    return get_settings().default_seed if args.seed is None else args.seed


def _battery(args: argparse.Namespace, config: ScenarioConfig) -> BatteryConfig:
    chemistry = getattr(args, "chemistry", None)
    capacity_j = getattr(args, "capacity_j", None)
    if getattr(args, "capacity_wh", None) is not None:
        capacity_j = wh_to_joules(args.capacity_wh)
    elif getattr(args, "capacity_ah", None) is not None:
        voltage = chemistry_for(config, chemistry or config.battery.chemistry).nominal_voltage_v
        capacity_j = amp_hours_to_joules(args.capacity_ah, voltage)
    return with_overrides(config.battery, capacity_j=capacity_j, charge_rate_c=args.c_rate, chemistry=chemistry)


def _days(value: Optional[float]) -> str:
    return "inf" if value is None else f"{value:.1f}"


def cmd_consumption(args: argparse.Namespace) -> int:
    config = load_scenario(args)
    table = breakdown(config.node)
    print(f"{config.name}: daily energy breakdown")
    print(f"{'activity':<24}{'power mW':>10}{'time s':>9}{'per day':>9}{'J each':>10}{'J/day':>10}")
    for row in table.events:
        print(f"{row.label:<24}{row.power_mw:>10.3f}{row.duration_s:>9.2f}{row.occurrences_per_day:>9d}"
              f"{row.energy_per_occurrence_j:>10.4f}{row.energy_per_day_j:>10.3f}")
    print(f"{'sleep':<24}{config.node.sleep_power_mw:>10.3f}{table.sleep_seconds:>9.0f}{'':>9}{'':>10}"
          f"{table.sleep_energy_j:>10.3f}")
    print(f"consumed: {table.consumed_per_day_j:.2f} J/day")
    print(f"losses:   {table.losses_per_day_j:.2f} J/day")
    print(f"total:    {table.total_per_day_j:.2f} J/day")
    return 0


def cmd_size(args: argparse.Namespace) -> int:
    config = load_scenario(args)
    battery = _battery(args, config)
    spec = battery_spec(config, battery)
    n = config.provisioning.interventions_per_year if args.n is None else args.n
    charge_time = config.provisioning.charge_time_s if args.charge_time_s is None else args.charge_time_s
    daily = node_daily_energy(config, battery=battery) if args.daily_energy_j is None else args.daily_energy_j
    result = size(daily, n, spec.charge_rate_c, charge_time)
    print(f"{config.name}: {daily:.2f} J/day, n={n}, {spec.charge_rate_c:g}C, {charge_time:g} s per intervention")
    print(f"minimum energy between interventions: {result.required_min_j:.1f} J")
    print(f"capacity bound: {result.bound_j:.1f} J = {result.bound_wh:.3f} Wh ({result.binding} term binds)")
    fewest = min_interventions(spec.capacity_j, spec.charge_rate_c, charge_time, daily)
    print(f"with {spec.capacity_wh:.2f} Wh: unlimited from {fewest} interventions per year")
    shortest = min_charge_time(spec.capacity_j, spec.charge_rate_c, n, daily)
    if shortest is None:
        print(f"with {spec.capacity_wh:.2f} Wh: cannot bridge one interval at n={n}")
    else:
        print(f"with {spec.capacity_wh:.2f} Wh: each intervention refills one interval after {shortest:.0f} s")
    if args.target_days is not None:
        pack = storage_for_autonomy(daily, args.target_days)
        cell = get_chemistry("alkaline", overrides=config.chemistries).cell_energy_j
        print(f"without recharging, {args.target_days:g} days need {pack / 1000:.2f} kJ"
              + (f" = {cells_required(pack, cell)} alkaline cells" if cell else ""))
    return 0


def cmd_autonomy(args: argparse.Namespace) -> int:
    config = load_scenario(args)
    battery = _battery(args, config)
    params = provisioning_params(config, args.n, args.charge_time_s, battery)
    result = autonomy(params)
    print(f"{config.name}: {params.battery.chemistry_label} {params.battery.capacity_j:.0f} J "
          f"({params.battery.capacity_wh:.2f} Wh), n={params.interventions_per_year}, "
          f"{params.battery.charge_rate_c:g}C, {params.charge_time_s:g} s")
    print(f"charged per intervention: {result.charged_per_intervention_j:.1f} J")
    required = "n/a" if result.required_min_j is None else f"{result.required_min_j:.1f} J"
    print(f"minimum energy between interventions: {required}")
    if result.unlimited:
        print("autonomy: inf")
    else:
        print(f"autonomy: {result.days:.1f} days ({result.days / 365:.2f} years)")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    config = load_scenario(args)
    scenario = fleet_scenario(config, args.n, args.charge_time_s, _battery(args, config))
    horizon = config.horizon_days if args.horizon_days is None else args.horizon_days
    seed = _seed(args)
    trace = run(scenario, horizon, seed)

    out_dir = prepare_dir(Path(args.out))
    artifacts = [
        write_csv(out_dir / "trace.csv", TRACE_HEADER, trace_records(trace)),
        write_csv(out_dir / "interventions.csv", INTERVENTION_HEADER, intervention_records(trace)),
        write_json(out_dir / "summary.json", summary_document(trace)),
    ]
    write_manifest(out_dir, args.command_line, config, artifacts, seed)
    for node_id, node in trace.summary.nodes.items():
        depletion = "none" if node.depletion_day is None else f"day {node.depletion_day}"
        print(f"{node_id}: depletion {depletion}, min SoC {node.min_soc:.3f}, "
              f"{node.interventions} interventions")
    print(f"UAV energy: {trace.summary.total_uav_energy_j / 1000:.1f} kJ over {len(trace.sorties)} sorties")
    return 0


def _reproduce_soc(config: ScenarioConfig, seed: int, out_dir: Path, svg: bool) -> List[Path]:
    rows: List[Dict[str, str]] = []
    series = {}
    for capacity_wh in config.sweeps.soc_capacities_wh:
        battery = with_overrides(config.battery, capacity_j=wh_to_joules(capacity_wh))
        trace = run(fleet_scenario(config, battery=battery), config.sweeps.soc_horizon_days, seed)
        first = trace.days[0].node_id
        series[f"{capacity_wh:g} Wh"] = ([r.day for r in trace.days if r.node_id == first],
                                         [r.soc for r in trace.days if r.node_id == first])
        for record in trace.days:
            rows.append({"capacity_wh": format_number(capacity_wh), "day": str(record.day),
                         "node_id": record.node_id, "soc": format_number(record.soc),
                         "stored_j": format_number(record.stored_j)})
        for node_id, day in trace.summary.depletion_days.items():
            print(f"{capacity_wh:g} Wh {node_id}: depletion {'none' if day is None else f'day {day}'}")
    artifacts = [write_csv(out_dir / "soc.csv", SOC_HEADER, rows)]
    if svg:
        artifacts.append(render_lines(out_dir / "soc.svg", series, "day", "state of charge",
                                      f"{config.name}: state of charge per battery size"))
    return artifacts


def _reproduce_autonomy(config: ScenarioConfig, args: argparse.Namespace, out_dir: Path, svg: bool) -> List[Path]:
    sweeps = config.sweeps
    n = config.provisioning.interventions_per_year if args.n is None else args.n
    rows = sweep_autonomy_vs_charge_time(
        [wh_to_joules(wh) for wh in sweeps.autonomy_capacities_wh], sweeps.autonomy_charge_rates_c, n,
        sweeps.charge_times_s, node_daily_energy(config), chemistry_for(config))
    print(f"{len(rows)} autonomy points, n={n}")
    artifacts = [write_csv(out_dir / "autonomy-vs-time.csv", AUTONOMY_HEADER, autonomy_records(rows))]
    if svg:
        series = {}
        for row in rows:
            label = f"{row.capacity_j / SECONDS_PER_HOUR:g} Wh {row.charge_rate_c:g}C"
            xs, ys = series.setdefault(label, ([], []))
            xs.append(row.charge_time_s)
            ys.append(math.nan if row.result.unlimited else row.result.days)
        artifacts.append(render_lines(out_dir / "autonomy-vs-time.svg", series, "charge time [s]",
                                      "autonomy [days]", f"{config.name}: autonomy, n={n}", logy=True))
    return artifacts


def _reproduce_capacity(config: ScenarioConfig, args: argparse.Namespace, out_dir: Path, svg: bool) -> List[Path]:
    sweeps = config.sweeps
    charge_time = config.provisioning.charge_time_s if args.charge_time_s is None else args.charge_time_s
    profiles = {name: daily_energy(load_preset(name).node) for name in sweeps.capacity_profiles}
    chemistries = {
        f"{key}-{rate:g}C": chemistry_for(config, key).model_copy(update={"charge_rate_c": rate})
        for key, rate in sweeps.capacity_chemistries.items()
    }
    rows = sweep_capacity_vs_interventions(profiles, chemistries, charge_time,
                                           range(sweeps.interventions_min, sweeps.interventions_max + 1))
    print(f"{len(rows)} capacity points, {charge_time:g} s per intervention")
    artifacts = [write_csv(out_dir / "capacity-vs-n.csv", CAPACITY_HEADER, capacity_records(rows))]
    if svg:
        series = {}
        for row in rows:
            xs, ys = series.setdefault(f"{row.profile} {row.chemistry}", ([], []))
            xs.append(row.interventions_per_year)
            ys.append(row.min_capacity_j / SECONDS_PER_HOUR)
        artifacts.append(render_lines(out_dir / "capacity-vs-n.svg", series, "interventions per year",
                                      "minimum capacity [Wh]", "minimum capacity for unlimited autonomy", logy=True))
    return artifacts


def cmd_reproduce(args: argparse.Namespace) -> int:
    if args.figure not in FIGURES:
        raise ConfigError(f"unknown figure {args.figure!r}, expected one of {list(FIGURES)}", key_path="figure")
    config = load_scenario(args)
    out_dir = prepare_dir(Path(args.out))
    seed = _seed(args)
    if args.figure == "soc":
        artifacts = _reproduce_soc(config, seed, out_dir, args.svg)
    elif args.figure == "autonomy-vs-time":
        artifacts = _reproduce_autonomy(config, args, out_dir, args.svg)
    else:
        artifacts = _reproduce_capacity(config, args, out_dir, args.svg)
    write_manifest(out_dir, args.command_line, config, artifacts, seed if args.figure == "soc" else None)
    return 0


def cmd_assess_wpt(args: argparse.Namespace) -> int:
    config = load_scenario(args)
    wpt = config.wpt
    report = link_report(wpt.ipt, wpt.rf, wpt.alignment, wpt.limits, wpt.requirements)
    print(f"{'technology':<11}{'energy J':>10}{'time s':>8}{'needs W':>10}{'limit W':>10}  verdict")
    for req, verdict in zip(wpt.requirements, report.verdicts):
        print(f"{verdict.technology:<11}{req.energy_j:>10.0f}{req.time_s:>8.0f}{verdict.required_power_w:>10.2f}"
              f"{verdict.available_power_w:>10.2f}  {'feasible' if verdict.feasible else 'infeasible'}"
              f" ({', '.join(verdict.reasons)})")
    print(f"RF at {wpt.rf.anchor.distance_m:g} m from {wpt.rf.anchor.tx_dbm:g} dBm: {report.rf_anchor_rx_dbm:.1f} dBm, "
          f"{report.rf_transfer_time_per_joule_s:.1f} s per joule")
    print("IPT efficiency: " + ", ".join(f"{offset:g} mm {eff:.1%}" for offset, eff in report.ipt_points))
    for verdict in report.localization:
        print(f"{verdict.regime:<9} {verdict.coarse_error_mm:>9.0f} mm  {verdict.reason}")
    infeasible = [v.technology for v in report.verdicts if not v.feasible]
    if args.require_feasible and infeasible:
        raise InfeasibleError(f"infeasible technologies: {', '.join(sorted(set(infeasible)))}")
    return 0


def cmd_presets(args: argparse.Namespace) -> int:
    settings = get_settings()
    for name in list_presets(settings):
        config = load_preset(name, settings)
        print(f"{name:<16}{config.description or ''}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    config = load_scenario(args)
    scenario = fleet_scenario(config, args.n, args.charge_time_s, _battery(args, config))
    horizon = config.horizon_days if args.horizon_days is None else args.horizon_days
    report = verify_scenario(scenario, horizon, _seed(args))
    depletion = {"simulated": report.simulated_depletion_day, "calendar": report.calendar_depletion_day}
    print(f"{config.name}: {report.horizon_days} days, verdict {report.verdict}")
    for source, day in depletion.items():
        print(f"{source + ' depletion:':<22}{'none' if day is None else f'day {day}'}")
    print(f"{'averaged autonomy:':<22}{_days(report.closed_form.days)} days"
          + ("" if report.closed_form_lead_days is None else f", {report.closed_form_lead_days:.1f} days later"))
    return 0 if report.passed else 1
