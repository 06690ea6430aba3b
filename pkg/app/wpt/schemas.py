import math
from typing import Any, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

SPEED_OF_LIGHT_M_S = 299_792_458.0

# misplacement that lowers the P9221 link from 85% to 70%, 32 x 42 mm coil
CALIBRATION_PEAK = 0.85
CALIBRATION_OFFSET_MM = 12.0
CALIBRATION_EFFICIENCY = 0.70

FalloffProfile = Literal["quadratic", "linear", "table"]
Regime = Literal["open", "forested", "rtk", "lpwan"]
Technology = Literal["IPT", "CPT", "RF"]

# 1-sigma coarse positioning error per regime, in meters
COARSE_ERROR_M = {
    "open": 2.0,
    "forested": 5.0,
    "rtk": 0.01,
    "lpwan": 100.0,
}


class IptCoilModel(BaseModel):
    """End-to-end efficiency of an inductive link as a function of lateral coil offset.

    quadratic: peak - falloff_per_mm2 * offset^2
    linear:    peak - falloff_per_mm * offset
    table:     piecewise linear through `table` (offset_mm, efficiency) points
    Every profile is 0 beyond cutoff_offset_mm.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    peak_efficiency: float = Field(default=CALIBRATION_PEAK, gt=0, le=1)
    profile: FalloffProfile = "quadratic"
    falloff_per_mm2: float = Field(
        default=(CALIBRATION_PEAK - CALIBRATION_EFFICIENCY) / CALIBRATION_OFFSET_MM ** 2, ge=0)
    falloff_per_mm: float = Field(
        default=(CALIBRATION_PEAK - CALIBRATION_EFFICIENCY) / CALIBRATION_OFFSET_MM, ge=0)
    table: List[Tuple[float, float]] = Field(
        default_factory=lambda: [(0.0, CALIBRATION_PEAK), (CALIBRATION_OFFSET_MM, CALIBRATION_EFFICIENCY)])
    # half the short side of the coil
    cutoff_offset_mm: float = Field(default=16.0, gt=0)
    coil_dims_mm: Tuple[float, float] = (32.0, 42.0)

    @model_validator(mode="after")
    def table_is_usable(self) -> "IptCoilModel":
        if self.profile != "table":
            return self
        if len(self.table) < 2:
            raise ValueError("a table profile needs at least two points")
        offsets = [point[0] for point in self.table]
        efficiencies = [point[1] for point in self.table]
        if offsets[0] != 0 or any(b <= a for a, b in zip(offsets, offsets[1:])):
            raise ValueError("table offsets must start at 0 and increase")
        if any(not 0 <= eff <= 1 for eff in efficiencies) or any(b > a for a, b in zip(efficiencies, efficiencies[1:])):
            raise ValueError("table efficiencies must lie in [0, 1] and not increase with offset")
        return self

    @classmethod
    def calibrated(cls, peak_efficiency: float = CALIBRATION_PEAK, offset_mm: float = CALIBRATION_OFFSET_MM,
                   efficiency: float = CALIBRATION_EFFICIENCY, profile: FalloffProfile = "quadratic",
                   **kwargs) -> "IptCoilModel":
        """Fit the falloff so the model passes through (0, peak) and (offset_mm, efficiency)."""
        if offset_mm <= 0 or efficiency > peak_efficiency:
            raise ValueError("calibration point must lie at a positive offset and not above the peak")
        drop = peak_efficiency - efficiency
        return cls(
            peak_efficiency=peak_efficiency,
            profile=profile,
            falloff_per_mm2=drop / offset_mm ** 2,
            falloff_per_mm=drop / offset_mm,
            table=[(0.0, peak_efficiency), (offset_mm, efficiency)],
            **kwargs,
        )


class RfAnchor(BaseModel):
    """A measured (or published) received power the model is pinned to."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    distance_m: float = Field(default=0.30, gt=0)
    tx_dbm: float = 27.0
    rx_dbm: float = 10.0


class RfLinkModel(BaseModel):
    """Parametric path-loss model pinned to one anchor point.

    path loss = 20 log10(4 pi f / c) + 10 * exponent * log10(d); exponent 2 is Friis.
    The calibration offset absorbs whatever the parametric form misses at the anchor.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    frequency_hz: float = Field(default=868e6, gt=0)
    combined_gain_db: float = 0.0
    path_loss_exponent: float = Field(default=2.0, gt=0)
    anchor: RfAnchor = Field(default_factory=RfAnchor)

    _calibration_offset_db: float = PrivateAttr(default=0.0)

    def model_post_init(self, __context: Any) -> None:
        predicted = self.anchor.tx_dbm + self.combined_gain_db - self.path_loss_db(self.anchor.distance_m)
        self._calibration_offset_db = self.anchor.rx_dbm - predicted

    @property
    def calibration_offset_db(self) -> float:
        return self._calibration_offset_db

    def path_loss_db(self, distance_m: float) -> float:
        return (20.0 * math.log10(4.0 * math.pi * self.frequency_hz / SPEED_OF_LIGHT_M_S)
                + 10.0 * self.path_loss_exponent * math.log10(distance_m))


class AlignmentModel(BaseModel):
    """Positioning error model: a coarse GNSS/geolocation stage and a fine residual after alignment."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    regime: Regime = "rtk"
    coarse_error_sigma_m: float = Field(ge=0)
    fine_residual_sigma_mm: float = Field(default=0.0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def coarse_error_from_regime(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("coarse_error_sigma_m") is None:
            preset = COARSE_ERROR_M.get(data.get("regime", "rtk"))
            data = {key: value for key, value in data.items() if key != "coarse_error_sigma_m"}
            if preset is not None:
                data["coarse_error_sigma_m"] = preset
        return data

    @classmethod
    def for_regime(cls, regime: Regime, fine_residual_sigma_mm: float = 0.0) -> "AlignmentModel":
        return cls(regime=regime, fine_residual_sigma_mm=fine_residual_sigma_mm)


class TechnologyRequirement(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    energy_j: float = Field(ge=0)
    time_s: float = Field(gt=0)
    technology: Technology


class TechnologyLimits(BaseModel):
    """Deliverable power per technology.

    IPT and CPT both reach beyond 1 kW; an RF link under ISM regulation is held to a
    receivable ceiling, by default the 10 dBm received 30 cm from a 27 dBm source.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    ipt_max_power_w: float = Field(default=1000.0, gt=0)
    cpt_max_power_w: float = Field(default=1000.0, gt=0)
    rf_receivable_ceiling_w: float = Field(default=0.01, gt=0)
    coupled_efficiency: float = Field(default=0.90, gt=0, le=1)


class TechnologyVerdict(BaseModel):
    technology: Technology
    feasible: bool
    required_power_w: float
    available_power_w: float
    efficiency_class: Literal["high", "low"]
    reasons: List[str]


class LocalizationVerdict(BaseModel):
    regime: Regime
    coarse_error_mm: float
    cutoff_offset_mm: float
    fine_alignment_needed: bool
    reason: str


class LinkReport(BaseModel):
    """Everything the assess-wpt report prints."""

    verdicts: List[TechnologyVerdict]
    rf_anchor_rx_dbm: float
    rf_transfer_time_per_joule_s: float
    ipt_points: List[Tuple[float, float]]
    localization: List[LocalizationVerdict]
    fine_alignment_sigma_mm: Optional[float] = None
