"""Built-in chemistry catalog.

Entries hold everything of a BatterySpec except the capacity, which is chosen
per node. Scenario files may override any field (see scenario.schemas).
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.settings import Settings, get_settings

from .schemas import BatterySpec


class Chemistry(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    label: str
    nominal_voltage_v: float = Field(gt=0)
    charge_rate_c: float = Field(ge=0)
    self_discharge_per_year: float = Field(default=0.0, ge=0, lt=1)
    cycle_life: Optional[int] = Field(default=None, gt=0)
    # usable energy of one cell, used for cell counts of non-rechargeable packs
    cell_energy_j: Optional[float] = Field(default=None, gt=0)


def _catalog(settings: Settings) -> Dict[str, Chemistry]:
    return {
        # three cells in series give the 21 kJ tree node pack
        "alkaline": Chemistry(label="Alkaline", nominal_voltage_v=1.5, charge_rate_c=0.0,
                              cell_energy_j=7000.0),
        "lco": Chemistry(label="LCO", nominal_voltage_v=3.6, charge_rate_c=1.0, self_discharge_per_year=0.03),
        # catalog default voltage, configurable through AERPROV_LTO_NOMINAL_VOLTAGE_V
        "lto": Chemistry(label="LTO", nominal_voltage_v=settings.lto_nominal_voltage_v, charge_rate_c=10.0),
    }


def list_chemistries(settings: Optional[Settings] = None) -> List[str]:
    return sorted(_catalog(settings or get_settings()))


def get_chemistry(name: str, settings: Optional[Settings] = None,
                  overrides: Optional[Dict[str, Chemistry]] = None) -> Chemistry:
    """Look up a chemistry by key; scenario overrides take precedence over the catalog."""
    key = name.lower()
    if overrides and key in overrides:
        return overrides[key]
    catalog = _catalog(settings or get_settings())
    if key not in catalog:
        raise KeyError(f"unknown chemistry {name!r}, expected one of {sorted(catalog)}")
    return catalog[key]


def build_spec(chemistry: Chemistry, capacity_j: float, charge_rate_c: Optional[float] = None) -> BatterySpec:
    return BatterySpec(
        chemistry_label=chemistry.label,
        nominal_voltage_v=chemistry.nominal_voltage_v,
        capacity_j=capacity_j,
        charge_rate_c=chemistry.charge_rate_c if charge_rate_c is None else charge_rate_c,
        self_discharge_per_year=chemistry.self_discharge_per_year,
        cycle_life=chemistry.cycle_life,
    )
