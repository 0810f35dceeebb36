"""JSON-lines scenario bundles: ground truth, scans and graph snapshots."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from src.shared.errors import ReportError
from src.sim.network import GraphSnapshot
from src.sim.scans import Scan
from src.sim.truth import GroundTruth

logger = logging.getLogger(__name__)

TRUTH_FILE = "truth.jsonl"
SCANS_FILE = "scans.jsonl"
NETWORK_FILE = "network.jsonl"


@dataclass(frozen=True)
class ScenarioBundle:
    """Everything one Monte Carlo run feeds to the trackers.

    network[n-1] holds the snapshots of step n: a single snapshot, or one per
    iteration when the policy resamples within a step.
    """

    truth: GroundTruth
    scans: list[list[Scan]]
    network: list[list[GraphSnapshot]]
    sensor_positions: np.ndarray

    @property
    def num_steps(self) -> int:
        return self.truth.num_steps

    @property
    def num_sensors(self) -> int:
        return len(self.scans[0]) if self.scans else 0


def _dumps(record: dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _write_lines(path: Path, records: Iterable[dict[str, Any]]) -> None:
    try:
        with open(path, "w") as f:
            for record in records:
                f.write(_dumps(record) + "\n")
    except OSError as e:
        raise ReportError(f"failed to write bundle file ({e})", path) from e


def _read_lines(path: Path) -> Iterator[dict[str, Any]]:
    try:
        with open(path) as f:
            for line in f:
                if line.strip():
                    yield json.loads(line)
    except (OSError, json.JSONDecodeError) as e:
        raise ReportError(f"failed to read bundle file ({e})", path) from e


def write_bundle(bundle: ScenarioBundle, directory: Path) -> list[Path]:
    """
    Serialise a bundle as three JSON-lines files, one record per time step.

    Args:
        bundle: Simulated run
        directory: Target directory (created if missing)

    Returns:
        Paths written
    """
    directory.mkdir(parents=True, exist_ok=True)
    truth = bundle.truth

    truth_records = [{"time_step": 0, "states": truth.initial.tolist()}]
    truth_records += [
        {"time_step": n + 1, "states": truth.states[n].tolist()}
        for n in range(truth.num_steps)
    ]
    scan_records = [
        {
            "time_step": n + 1,
            "scans": [
                {
                    "sensor_id": scan.sensor_id,
                    "measurements": scan.measurements.tolist(),
                    "truth_origins": None
                    if scan.truth_origins is None
                    else scan.truth_origins.tolist(),
                }
                for scan in step_scans
            ],
        }
        for n, step_scans in enumerate(bundle.scans)
    ]
    network_records = [
        {
            "time_step": n + 1,
            "sensor_positions": bundle.sensor_positions.tolist() if n == 0 else None,
            "snapshots": [s.adjacency.astype(int).tolist() for s in snapshots],
        }
        for n, snapshots in enumerate(bundle.network)
    ]

    paths = [directory / TRUTH_FILE, directory / SCANS_FILE, directory / NETWORK_FILE]
    records_per_file = [truth_records, scan_records, network_records]
    for path, records in zip(paths, records_per_file, strict=True):
        _write_lines(path, records)
        logger.info(f"✓ Wrote {path.name}")
    return paths


def read_bundle(directory: Path) -> ScenarioBundle:
    """Load a bundle written by `write_bundle`."""
    truth_records = sorted(_read_lines(directory / TRUTH_FILE), key=lambda r: r["time_step"])
    if not truth_records or truth_records[0]["time_step"] != 0:
        raise ReportError("truth file has no initial-state record", directory / TRUTH_FILE)
    truth = GroundTruth(
        initial=np.asarray(truth_records[0]["states"], dtype=float),
        states=np.asarray([r["states"] for r in truth_records[1:]], dtype=float),
    )

    scans = []
    for record in sorted(_read_lines(directory / SCANS_FILE), key=lambda r: r["time_step"]):
        scans.append(
            [
                Scan(
                    sensor_id=s["sensor_id"],
                    time_step=record["time_step"],
                    measurements=np.asarray(s["measurements"], dtype=float),
                    truth_origins=None
                    if s["truth_origins"] is None
                    else np.asarray(s["truth_origins"], dtype=int),
                )
                for s in record["scans"]
            ]
        )

    network = []
    positions = None
    for record in sorted(
        _read_lines(directory / NETWORK_FILE), key=lambda r: r["time_step"]
    ):
        if record.get("sensor_positions") is not None:
            positions = np.asarray(record["sensor_positions"], dtype=float)
        network.append(
            [GraphSnapshot(record["time_step"], np.asarray(a)) for a in record["snapshots"]]
        )
    if positions is None:
        raise ReportError("network file has no sensor positions", directory / NETWORK_FILE)

    return ScenarioBundle(truth=truth, scans=scans, network=network, sensor_positions=positions)
