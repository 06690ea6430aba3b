"""Closed-form provisioning model.

All energies in joules, n interventions per year, a charge of charge_time_s at
charge_rate_c per visit:

  charged per visit        capacity_j * charge_rate_c / 3600 * charge_time_s
  required between visits  daily_energy_j * 365 / n
  autonomy (days)          365 * capacity_j / (365 * daily_energy_j - charged * n)
  unlimited autonomy       capacity_j > max(required * 3600 / (charge_rate_c * charge_time_s), required)
"""
import math
from typing import Optional

from app.battery.charging import charge_candidate, self_discharge_per_day
from app.battery.schemas import DAYS_PER_YEAR, SECONDS_PER_HOUR, BatterySpec
from app.consumption.energy import daily_consumption, daily_losses
from app.consumption.schemas import NodeProfile

from .schemas import AutonomyResult, ProvisioningParams, SizingResult


def daily_energy(profile: NodeProfile, battery: Optional[BatterySpec] = None) -> float:
    """E_Consumed + E_Losses in J/day, with the battery's own self-discharge added when given."""
    energy = daily_consumption(profile) + daily_losses(profile.losses)
    if battery is not None:
        energy += self_discharge_per_day(battery)
    return energy


def charged_per_intervention(params: ProvisioningParams) -> float:
    """Not clamped to the battery headroom; the simulator does that."""
    return charge_candidate(params.battery, params.charge_time_s)


def required_min_energy(daily_energy_j: float, interventions_per_year: int) -> float:
    if interventions_per_year < 1:
        raise ValueError(f"at least one intervention per year is required, got {interventions_per_year}")
    return daily_energy_j * DAYS_PER_YEAR / interventions_per_year


def autonomy(params: ProvisioningParams) -> AutonomyResult:
    n = params.interventions_per_year
    charged = charged_per_intervention(params)
    required = required_min_energy(params.daily_energy_j, n) if n >= 1 else None
    bridges = required is not None and params.battery.capacity_j > required

    denominator = DAYS_PER_YEAR * params.daily_energy_j - charged * n
    if denominator <= 0:
        return AutonomyResult(outcome="unlimited", charged_per_intervention_j=charged,
                              required_min_j=required, bridges_interval=bridges)
    days = DAYS_PER_YEAR * params.battery.capacity_j / denominator
    return AutonomyResult(outcome="finite", days=days, charged_per_intervention_j=charged,
                          required_min_j=required, bridges_interval=bridges)


def min_capacity(daily_energy_j: float, interventions_per_year: int, charge_rate_c: float,
                 charge_time_s: float) -> float:
    """Open lower bound on the capacity; any capacity strictly above it gives unlimited autonomy."""
    if charge_rate_c <= 0:
        raise ValueError("charge rate must be positive to size a rechargeable battery")
    if charge_time_s <= 0:
        raise ValueError("charge time must be positive to size a rechargeable battery")
    required = required_min_energy(daily_energy_j, interventions_per_year)
    return max(required * SECONDS_PER_HOUR / (charge_rate_c * charge_time_s), required)


def size(daily_energy_j: float, interventions_per_year: int, charge_rate_c: float,
         charge_time_s: float) -> SizingResult:
    bound = min_capacity(daily_energy_j, interventions_per_year, charge_rate_c, charge_time_s)
    # equal terms when CR * T == 3600 s; reported as the bridging term
    binding = "charge-rate" if charge_rate_c * charge_time_s < SECONDS_PER_HOUR else "bridging"
    return SizingResult(
        required_min_j=required_min_energy(daily_energy_j, interventions_per_year),
        bound_j=bound,
        bound_wh=bound / SECONDS_PER_HOUR,
        binding=binding,
    )


def link_power(params: ProvisioningParams) -> float:
    """Average power in W the WPT link has to deliver into the battery during a charge."""
    if params.charge_time_s <= 0:
        raise ValueError("charge time must be positive")
    return charged_per_intervention(params) / params.charge_time_s


def min_interventions(capacity_j: float, charge_rate_c: float, charge_time_s: float,
                      daily_energy_j: float) -> int:
    """Smallest n per year for which capacity_j satisfies the unlimited-autonomy condition."""
    if capacity_j <= 0:
        raise ValueError("capacity must be positive")
    if charge_rate_c <= 0 or charge_time_s <= 0:
        raise ValueError("charge rate and charge time must be positive")
    if daily_energy_j == 0:
        return 1
    factor = max(SECONDS_PER_HOUR / (charge_rate_c * charge_time_s), 1.0)
    return math.floor(DAYS_PER_YEAR * daily_energy_j * factor / capacity_j) + 1


def min_charge_time(capacity_j: float, charge_rate_c: float, interventions_per_year: int,
                    daily_energy_j: float) -> Optional[float]:
    """Shortest charge per visit that refills what one interval drains; None when the battery cannot bridge it."""
    required = required_min_energy(daily_energy_j, interventions_per_year)
    if capacity_j <= required or charge_rate_c <= 0:
        return None
    return required * SECONDS_PER_HOUR / (capacity_j * charge_rate_c)


def storage_for_autonomy(daily_energy_j: float, days: float) -> float:
    """Usable energy a never-recharged node needs to run for the given days."""
    if daily_energy_j < 0 or days < 0:
        raise ValueError("daily energy and days must be non-negative")
    return daily_energy_j * days


def cells_required(energy_j: float, cell_energy_j: float) -> int:
    if cell_energy_j <= 0:
        raise ValueError("cell energy must be positive")
    return math.ceil(energy_j / cell_energy_j)


def intervention_days(interventions_per_year: int, horizon_days: int):
    """Days of an evenly spaced calendar: floor(k * 365 / n) for k = 1, 2, ..."""
    if not 1 <= interventions_per_year <= 365:
        raise ValueError(f"a calendar holds 1 to 365 interventions per year, got {interventions_per_year}")
    k = 1
    while True:
        day = (k * 365) // interventions_per_year
        if day > horizon_days:
            return
        yield day
        k += 1


def calendar_depletion_day(params: ProvisioningParams, horizon_days: int,
                           initial_stored_j: Optional[float] = None) -> Optional[int]:
    """First day the battery reaches zero under the evenly spaced calendar, or None within the horizon.

    Works interval by interval: drain E_daily per day, charge on each calendar day
    (after that day's drain), clamp the charge to the headroom. This is the day-exact
    counterpart of the autonomy formula, which averages the charge over the year.
    """
    capacity = params.battery.capacity_j
    daily = params.daily_energy_j
    level = capacity if initial_stored_j is None else initial_stored_j
    if daily == 0:
        return None
    charged = charged_per_intervention(params)
    day = 0
    calendar = (intervention_days(params.interventions_per_year, horizon_days)
                if params.interventions_per_year > 0 else iter(()))
    for next_day in calendar:
        if level - daily * (next_day - day) <= 0:
            break
        level = min(capacity, level - daily * (next_day - day) + charged)
        day = next_day
    depletion = day + max(1, math.ceil(level / daily))
    return depletion if depletion <= horizon_days else None
