"""Ground truth, NHPP scans and the time-varying sensor network."""

from src.sim.network import (
    GraphSnapshot,
    NetworkPolicy,
    generate_iteration_snapshots,
    generate_network,
    place_sensors,
)
from src.sim.scans import Scan, simulate_scan, strip_truth
from src.sim.truth import GroundTruth, place_objects, simulate_truth

__all__ = [
    "GraphSnapshot",
    "NetworkPolicy",
    "generate_iteration_snapshots",
    "generate_network",
    "place_sensors",
    "Scan",
    "simulate_scan",
    "strip_truth",
    "GroundTruth",
    "place_objects",
    "simulate_truth",
]
