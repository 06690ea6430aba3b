"""Daily energy of a duty-cycled node (E_Consumed) and its parasitic losses (E_Losses)."""
from .schemas import (SECONDS_PER_DAY, ActivityEvent, ConsumptionBreakdown, EventEnergy,
                      LossProfile, NodeProfile)


def event_energy(event: ActivityEvent) -> float:
    """Energy of a single occurrence in J."""
    return event.power_mw / 1000.0 * event.duration_s


def active_seconds(profile: NodeProfile) -> float:
    return sum(event.active_seconds_per_day for event in profile.events)


def daily_consumption(profile: NodeProfile) -> float:
    """J/day; sleep power only counts for the seconds no event is running."""
    active = active_seconds(profile)
    if active > SECONDS_PER_DAY:
        raise ValueError(f"active time {active} s exceeds one day")
    events = sum(event_energy(event) * event.occurrences_per_day for event in profile.events)
    return events + profile.sleep_power_mw / 1000.0 * (SECONDS_PER_DAY - active)


def daily_losses(losses: LossProfile) -> float:
    return losses.e_sd_j + losses.e_conv_j + losses.e_leak_j


def conversion_losses(consumed_per_day_j: float, efficiency: float, quiescent_power_mw: float = 0.0) -> float:
    """E_Conv in J/day of a regulator with the given efficiency and quiescent draw.

    A battery wired straight to the load is efficiency 1 with no quiescent draw.
    """
    if not 0 < efficiency <= 1:
        raise ValueError(f"efficiency must be within (0, 1], got {efficiency}")
    if consumed_per_day_j < 0 or quiescent_power_mw < 0:
        raise ValueError("consumption and quiescent power must be non-negative")
    return consumed_per_day_j * (1.0 / efficiency - 1.0) + quiescent_power_mw / 1000.0 * SECONDS_PER_DAY


def breakdown(profile: NodeProfile) -> ConsumptionBreakdown:
    rows = [
        EventEnergy(
            label=event.label,
            power_mw=event.power_mw,
            duration_s=event.duration_s,
            occurrences_per_day=event.occurrences_per_day,
            energy_per_occurrence_j=event_energy(event),
            energy_per_day_j=event_energy(event) * event.occurrences_per_day,
        )
        for event in profile.events
    ]
    sleep_seconds = SECONDS_PER_DAY - active_seconds(profile)
    return ConsumptionBreakdown(
        events=rows,
        sleep_seconds=sleep_seconds,
        sleep_energy_j=profile.sleep_power_mw / 1000.0 * sleep_seconds,
        consumed_per_day_j=daily_consumption(profile),
        losses_per_day_j=daily_losses(profile.losses),
    )
