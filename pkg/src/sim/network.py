"""Time-varying sensor network generation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.model.sensor import Region
from src.shared.errors import SimulationError
from src.sim.streams import Stream, stream_rng

logger = logging.getLogger(__name__)


class NetworkPolicy(BaseModel):
    """How sensor connectivity is drawn at each time step."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["geometric", "complete"] = Field(
        default="geometric",
        description="'geometric': radius graph with random edge dropout; "
        "'complete': every pair connected",
    )
    radius: float = Field(
        default=800.0, gt=0, description="Communication radius for the geometric graph"
    )
    dropout: float = Field(
        default=0.2,
        ge=0,
        lt=1,
        description="Independent per-step probability that an in-range edge is down",
    )
    max_retries: int = Field(
        default=100,
        ge=1,
        description="Draws attempted before giving up on a connected graph",
    )
    resample_per_iteration: bool = Field(
        default=False,
        description="Draw a fresh graph for every iteration instead of once per step",
    )


@dataclass(frozen=True)
class GraphSnapshot:
    """Undirected sensor adjacency at one time step (or iteration)."""

    time_step: int
    adjacency: np.ndarray

    def __post_init__(self) -> None:
        adjacency = np.asarray(self.adjacency, dtype=bool)
        if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
            raise SimulationError(f"adjacency must be square, got {adjacency.shape}")
        if not np.array_equal(adjacency, adjacency.T):
            raise SimulationError("adjacency must be symmetric")
        if np.any(np.diag(adjacency)):
            raise SimulationError("adjacency must have an empty diagonal")
        object.__setattr__(self, "adjacency", adjacency)

    @property
    def num_sensors(self) -> int:
        return self.adjacency.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def neighbours(self, sensor: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[sensor])

    def to_graph(self) -> nx.Graph:
        return nx.from_numpy_array(self.adjacency.astype(int))

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_graph())

    @classmethod
    def complete(cls, num_sensors: int, time_step: int = 0) -> GraphSnapshot:
        return cls(time_step, ~np.eye(num_sensors, dtype=bool))

    @classmethod
    def path(cls, num_sensors: int, time_step: int = 0) -> GraphSnapshot:
        adjacency = nx.to_numpy_array(nx.path_graph(num_sensors)).astype(bool)
        return cls(time_step, adjacency)


def place_sensors(num_sensors: int, region: Region, rng_seed: int) -> np.ndarray:
    """Fixed sensor positions, uniform over the region, shape (N_s, 2)."""
    rng = stream_rng(rng_seed, Stream.SENSORS)
    return np.column_stack(
        [
            rng.uniform(region.x_min, region.x_max, num_sensors),
            rng.uniform(region.y_min, region.y_max, num_sensors),
        ]
    )


def _in_range(positions: np.ndarray, radius: float) -> np.ndarray:
    distances = np.linalg.norm(positions[:, None, :] - positions[None, :, :], axis=-1)
    in_range = distances <= radius
    np.fill_diagonal(in_range, False)
    return in_range


def _draw_snapshot(
    positions: np.ndarray,
    policy: NetworkPolicy,
    rng: np.random.Generator,
    time_step: int,
) -> GraphSnapshot:
    n = positions.shape[0]
    if policy.kind == "complete" or n == 1:
        return GraphSnapshot(time_step, ~np.eye(n, dtype=bool))

    in_range = _in_range(positions, policy.radius)
    upper = np.triu(in_range, k=1)
    for _ in range(policy.max_retries):
        kept = upper & (rng.random((n, n)) >= policy.dropout)
        snapshot = GraphSnapshot(time_step, kept | kept.T)
        if snapshot.is_connected():
            return snapshot
    raise SimulationError(
        f"no connected graph after {policy.max_retries} draws at step {time_step} "
        f"(radius={policy.radius}, dropout={policy.dropout})"
    )


def generate_network(
    positions: np.ndarray,
    connectivity_policy: NetworkPolicy,
    T: int,
    rng_seed: int,
    run: int = 0,
) -> list[GraphSnapshot]:
    """
    One connected snapshot per time step 1..T.

    Args:
        positions: Fixed sensor positions, shape (N_s, 2)
        connectivity_policy: Graph policy
        T: Number of steps
        rng_seed: Master seed
        run: Monte Carlo run index

    Returns:
        List of T snapshots
    """
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    if positions.shape[0] < 1:
        raise SimulationError("network needs at least one sensor")
    snapshots = [
        _draw_snapshot(
            positions,
            connectivity_policy,
            stream_rng(rng_seed, Stream.NETWORK, run, n),
            n,
        )
        for n in range(1, T + 1)
    ]
    logger.debug(
        f"Generated {T} snapshots for {positions.shape[0]} sensors "
        f"(mean degree {np.mean([s.degrees.mean() for s in snapshots]):.2f})"
    )
    return snapshots


def generate_iteration_snapshots(
    positions: np.ndarray,
    connectivity_policy: NetworkPolicy,
    time_step: int,
    iterations: int,
    rng_seed: int,
    run: int = 0,
) -> list[GraphSnapshot]:
    """One connected snapshot per iteration within a single time step."""
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    return [
        _draw_snapshot(
            positions,
            connectivity_policy,
            stream_rng(rng_seed, Stream.NETWORK, run, time_step, i),
            time_step,
        )
        for i in range(iterations)
    ]
