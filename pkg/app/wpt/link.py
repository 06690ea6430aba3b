"""Wireless power transfer link models and the technology assessment."""
import math
from typing import List, Sequence

import numpy as np

from .schemas import (COARSE_ERROR_M, AlignmentModel, IptCoilModel, LinkReport, LocalizationVerdict, RfLinkModel,
                      TechnologyLimits, TechnologyRequirement, TechnologyVerdict)


def dbm_to_watts(power_dbm: float) -> float:
    return 10.0 ** (power_dbm / 10.0) / 1000.0


def watts_to_dbm(power_w: float) -> float:
    if power_w <= 0:
        raise ValueError(f"power must be positive, got {power_w} W")
    return 10.0 * math.log10(power_w * 1000.0)


def ipt_efficiency(offset_mm: float, model: IptCoilModel) -> float:
    if offset_mm < 0:
        raise ValueError(f"offset must be non-negative, got {offset_mm} mm")
    if offset_mm > model.cutoff_offset_mm:
        return 0.0
    if model.profile == "quadratic":
        efficiency = model.peak_efficiency - model.falloff_per_mm2 * offset_mm ** 2
    elif model.profile == "linear":
        efficiency = model.peak_efficiency - model.falloff_per_mm * offset_mm
    else:
        offsets, efficiencies = zip(*model.table)
        efficiency = float(np.interp(offset_mm, offsets, efficiencies))
    return min(1.0, max(0.0, efficiency))


def rf_received_power(tx_dbm: float, distance_m: float, model: RfLinkModel) -> float:
    """Received power in dBm; reproduces the model's anchor point by construction."""
    if distance_m <= 0:
        raise ValueError(f"distance must be positive, got {distance_m} m")
    return tx_dbm + model.combined_gain_db - model.path_loss_db(distance_m) + model.calibration_offset_db


def transfer_time(energy_j: float, received_power_w: float) -> float:
    if received_power_w <= 0:
        raise ValueError(f"received power must be positive, got {received_power_w} W")
    if energy_j < 0:
        raise ValueError(f"energy must be non-negative, got {energy_j} J")
    return energy_j / received_power_w


def required_link_power(energy_j: float, time_s: float) -> float:
    if time_s <= 0:
        raise ValueError(f"time must be positive, got {time_s} s")
    return energy_j / time_s


def assess_technology(req: TechnologyRequirement, limits: TechnologyLimits = TechnologyLimits()) -> TechnologyVerdict:
    required = required_link_power(req.energy_j, req.time_s)
    if req.technology == "RF":
        available = limits.rf_receivable_ceiling_w
        efficiency_class = "low"
        reasons = ["ism-regulated-ceiling", "efficiency-low"]
    else:
        available = limits.ipt_max_power_w if req.technology == "IPT" else limits.cpt_max_power_w
        efficiency_class = "high"
        reasons = [f"efficiency-up-to-{limits.coupled_efficiency:.0%}"]
    feasible = required <= available
    reasons.insert(0, "power-within-limit" if feasible else "power-exceeds-limit")
    return TechnologyVerdict(technology=req.technology, feasible=feasible, required_power_w=required,
                             available_power_w=available, efficiency_class=efficiency_class, reasons=reasons)


def assess_localization(alignment: AlignmentModel, coil: IptCoilModel) -> LocalizationVerdict:
    """Whether coarse positioning alone puts the UAV within the coil's cutoff offset."""
    coarse_mm = alignment.coarse_error_sigma_m * 1000.0
    needed = coarse_mm > coil.cutoff_offset_mm
    reason = ("coarse error exceeds the coil cutoff, a fine alignment stage is required" if needed
              else "coarse positioning lands within the coil cutoff")
    return LocalizationVerdict(regime=alignment.regime, coarse_error_mm=coarse_mm,
                               cutoff_offset_mm=coil.cutoff_offset_mm, fine_alignment_needed=needed,
                               reason=reason)


def assess_regimes(coil: IptCoilModel) -> List[LocalizationVerdict]:
    return [assess_localization(AlignmentModel.for_regime(regime), coil) for regime in COARSE_ERROR_M]


def sample_alignment(model: AlignmentModel, rng: np.random.Generator) -> float:
    """Radial offset in mm after fine alignment, half-normal with scale fine_residual_sigma_mm."""
    if model.fine_residual_sigma_mm == 0:
        return 0.0
    return float(abs(rng.normal(0.0, model.fine_residual_sigma_mm)))


def ipt_points(model: IptCoilModel, offsets_mm: Sequence[float] = (0.0, 6.0, 12.0)) -> List[tuple]:
    return [(offset, ipt_efficiency(offset, model)) for offset in offsets_mm]


def link_report(ipt: IptCoilModel, rf: RfLinkModel, alignment: AlignmentModel, limits: TechnologyLimits,
                requirements: Sequence[TechnologyRequirement]) -> LinkReport:
    anchor_rx_dbm = rf_received_power(rf.anchor.tx_dbm, rf.anchor.distance_m, rf)
    return LinkReport(
        verdicts=[assess_technology(req, limits) for req in requirements],
        rf_anchor_rx_dbm=anchor_rx_dbm,
        rf_transfer_time_per_joule_s=transfer_time(1.0, dbm_to_watts(anchor_rx_dbm)),
        ipt_points=ipt_points(ipt),
        localization=assess_regimes(ipt),
        fine_alignment_sigma_mm=alignment.fine_residual_sigma_mm,
    )
