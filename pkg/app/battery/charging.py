"""Stored-energy bookkeeping: C-rate limited charging, drain and self-discharge.

All functions return new states; a BatteryState is never mutated.
"""
import logging
from typing import Tuple

from .schemas import DAYS_PER_YEAR, SECONDS_PER_HOUR, BatterySpec, BatteryState

logger = logging.getLogger(__name__)


def wh_to_joules(energy_wh: float) -> float:
    if energy_wh < 0:
        raise ValueError(f"energy must be non-negative, got {energy_wh} Wh")
    return energy_wh * SECONDS_PER_HOUR


def amp_hours_to_joules(capacity_ah: float, voltage_v: float) -> float:
    if capacity_ah < 0 or voltage_v <= 0:
        raise ValueError(f"invalid capacity {capacity_ah} Ah at {voltage_v} V")
    return capacity_ah * voltage_v * SECONDS_PER_HOUR


def charge_candidate(spec: BatterySpec, duration_s: float) -> float:
    """Energy a linear C-rate charge could put in over duration_s, before the headroom clamp."""
    return spec.capacity_j * (spec.charge_rate_c / SECONDS_PER_HOUR) * duration_s


def charge(state: BatteryState, duration_s: float) -> Tuple[BatteryState, float]:
    """Charge for duration_s seconds; returns the new state and the energy actually stored."""
    if duration_s < 0:
        raise ValueError(f"duration must be non-negative, got {duration_s} s")
    headroom = state.spec.capacity_j - state.stored_j
    amount = min(charge_candidate(state.spec, duration_s), headroom)
    if amount <= 0:
        return state, 0.0
    new_state = state.model_copy(update={
        "stored_j": min(state.stored_j + amount, state.spec.capacity_j),
        "cumulative_charged_j": state.cumulative_charged_j + amount,
    })
    return new_state, amount


def discharge(state: BatteryState, energy_j: float) -> Tuple[BatteryState, float]:
    """Draw energy_j from the battery, clamped at empty; returns the new state and what was drawn."""
    if energy_j < 0:
        raise ValueError(f"energy must be non-negative, got {energy_j} J")
    drawn = min(energy_j, state.stored_j)
    if drawn == 0:
        return state, 0.0
    return state.model_copy(update={"stored_j": max(0.0, state.stored_j - drawn)}), drawn


def self_discharge_per_day(spec: BatterySpec) -> float:
    """E_SD in J/day: a constant share of full capacity, not of the current charge."""
    return spec.capacity_j * spec.self_discharge_per_year / DAYS_PER_YEAR


def self_discharge(state: BatteryState, days: float) -> BatteryState:
    if days < 0:
        raise ValueError(f"days must be non-negative, got {days}")
    loss = self_discharge_per_day(state.spec) * days
    if loss == 0:
        return state
    return state.model_copy(update={"stored_j": max(0.0, state.stored_j - loss)})


def soc(state: BatteryState) -> float:
    return min(1.0, max(0.0, state.stored_j / state.spec.capacity_j))


def equivalent_cycles(state: BatteryState) -> float:
    return state.cumulative_charged_j / state.spec.capacity_j


def cycle_life_exceeded(state: BatteryState, warning_fraction: float = 0.8) -> bool:
    """True once equivalent full cycles pass warning_fraction of the rated cycle life.

    Nothing is enforced, the crossing is only logged.
    """
    if state.spec.cycle_life is None:
        return False
    exceeded = equivalent_cycles(state) >= warning_fraction * state.spec.cycle_life
    if exceeded:
        logger.warning("%s battery at %.1f equivalent cycles of %d rated",
                       state.spec.chemistry_label, equivalent_cycles(state), state.spec.cycle_life)
    return exceeded
