"""Parameter grids behind the autonomy and capacity figures.

Rows come back in input order (outer to inner loop as listed in each signature).
"""
from typing import Dict, Iterable, List, Mapping, Sequence

from app.battery.repository import Chemistry, build_spec
from app.battery.schemas import SECONDS_PER_HOUR

from .equations import autonomy, min_capacity, required_min_energy
from .schemas import AutonomyRow, CapacityRow, ProvisioningParams

AUTONOMY_HEADER = ["capacity_j", "capacity_wh", "charge_rate_c", "charge_time_s", "autonomy_days"]
CAPACITY_HEADER = ["profile", "chemistry", "charge_rate_c", "interventions_per_year",
                   "required_min_j", "min_capacity_j", "min_capacity_wh"]


def sweep_autonomy_vs_charge_time(capacities_j: Sequence[float], charge_rates_c: Sequence[float],
                                  interventions_per_year: int, charge_times_s: Iterable[float],
                                  daily_energy_j: float, chemistry: Chemistry) -> List[AutonomyRow]:
    times = list(charge_times_s)
    if not capacities_j or not charge_rates_c or not times:
        raise ValueError("capacities, charge rates and charge times must all be non-empty")
    rows = []
    for capacity in capacities_j:
        for rate in charge_rates_c:
            spec = build_spec(chemistry, capacity, charge_rate_c=rate)
            for charge_time in times:
                params = ProvisioningParams(interventions_per_year=interventions_per_year,
                                            charge_time_s=charge_time, battery=spec,
                                            daily_energy_j=daily_energy_j)
                rows.append(AutonomyRow(capacity_j=capacity, charge_rate_c=rate,
                                        charge_time_s=charge_time, result=autonomy(params)))
    return rows


def sweep_capacity_vs_interventions(profiles: Mapping[str, float], chemistries: Mapping[str, Chemistry],
                                    charge_time_s: float, interventions: Iterable[int]) -> List[CapacityRow]:
    """profiles maps a label to its daily energy in J; chemistries maps a label to a catalog entry."""
    counts = list(interventions)
    if not profiles or not chemistries or not counts:
        raise ValueError("profiles, chemistries and intervention counts must all be non-empty")
    rows = []
    for profile_label, daily in profiles.items():
        for chemistry_label, chemistry in chemistries.items():
            for n in counts:
                rows.append(CapacityRow(
                    profile=profile_label,
                    chemistry=chemistry_label,
                    charge_rate_c=chemistry.charge_rate_c,
                    interventions_per_year=n,
                    required_min_j=required_min_energy(daily, n),
                    min_capacity_j=min_capacity(daily, n, chemistry.charge_rate_c, charge_time_s),
                ))
    return rows


def format_number(value: float) -> str:
    """Shortest text that parses back to the same float; unlimited values become 'inf'."""
    if value == float("inf"):
        return "inf"
    return repr(float(value))


def autonomy_records(rows: Sequence[AutonomyRow]) -> List[Dict[str, str]]:
    return [
        {
            "capacity_j": format_number(row.capacity_j),
            "capacity_wh": format_number(row.capacity_j / SECONDS_PER_HOUR),
            "charge_rate_c": format_number(row.charge_rate_c),
            "charge_time_s": format_number(row.charge_time_s),
            "autonomy_days": "inf" if row.result.unlimited else format_number(row.result.days),
        }
        for row in rows
    ]


def capacity_records(rows: Sequence[CapacityRow]) -> List[Dict[str, str]]:
    return [
        {
            "profile": row.profile,
            "chemistry": row.chemistry,
            "charge_rate_c": format_number(row.charge_rate_c),
            "interventions_per_year": str(row.interventions_per_year),
            "required_min_j": format_number(row.required_min_j),
            "min_capacity_j": format_number(row.min_capacity_j),
            "min_capacity_wh": format_number(row.min_capacity_j / SECONDS_PER_HOUR),
        }
        for row in rows
    ]
