"""Artifact writers. Every file is written deterministically: sorted keys, '\\n' line endings, no timestamps."""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

from app import __version__
from app.errors import OutputError
from app.provisioning.sweeps import format_number
from app.scenario.repository import config_hash
from app.scenario.schemas import RunManifest, ScenarioConfig
from app.sim.schemas import SimTrace

logger = logging.getLogger(__name__)

TRACE_HEADER = ["day", "node_id", "soc", "stored_j"]
INTERVENTION_HEADER = ["day", "node_id", "offset_mm", "efficiency", "stored_j", "uav_spent_j", "duration_s", "aligned"]
MANIFEST_FILE = "manifest.json"


def prepare_dir(out_dir: Path) -> Path:
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as error:
        raise OutputError(f"cannot create output directory {out_dir}: {error.strerror}") from error
    return out_dir


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Mapping[str, str]]) -> Path:
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=list(header), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    except OSError as error:
        raise OutputError(f"cannot write {path}: {error.strerror}") from error
    logger.info("wrote %s", path)
    return path


def write_json(path: Path, data: Any) -> Path:
    try:
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as error:
        raise OutputError(f"cannot write {path}: {error.strerror}") from error
    logger.info("wrote %s", path)
    return path


def trace_records(trace: SimTrace) -> List[Dict[str, str]]:
    return [
        {"day": str(record.day), "node_id": record.node_id,
         "soc": format_number(record.soc), "stored_j": format_number(record.stored_j)}
        for record in trace.days
    ]


def intervention_records(trace: SimTrace) -> List[Dict[str, str]]:
    return [
        {
            "day": str(record.day),
            "node_id": record.node_id,
            "offset_mm": format_number(record.offset_mm),
            "efficiency": format_number(record.efficiency),
            "stored_j": format_number(record.stored_j),
            "uav_spent_j": format_number(record.uav_spent_j),
            "duration_s": format_number(record.duration_s),
            "aligned": "true" if record.aligned else "false",
        }
        for record in trace.interventions
    ]


def summary_document(trace: SimTrace) -> Dict[str, Any]:
    summary = trace.summary
    return {
        "horizon_days": summary.horizon_days,
        "seed": summary.seed,
        "depletion_day": summary.depletion_days,
        "nodes": {node_id: node.model_dump() for node_id, node in summary.nodes.items()},
        "total_uav_energy_j": summary.total_uav_energy_j,
        "sorties": len(trace.sorties),
    }


def write_manifest(out_dir: Path, command: str, config: ScenarioConfig, artifacts: Sequence[Path],
                   seed: Optional[int] = None) -> RunManifest:
    manifest = RunManifest(
        command=command,
        config_hash=config_hash(config),
        seed=seed,
        artifacts=sorted(path.name for path in artifacts),
        tool_version=__version__,
    )
    write_json(out_dir / MANIFEST_FILE, manifest.model_dump())
    return manifest
