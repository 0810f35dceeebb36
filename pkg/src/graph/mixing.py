"""Metropolis mixing weights and consensus primitives."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from src.sim.network import GraphSnapshot


@dataclass(frozen=True)
class MixingMatrix:
    """Symmetric doubly stochastic weights built from one snapshot."""

    weights: np.ndarray
    snapshot_ref: int

    @property
    def num_sensors(self) -> int:
        return self.weights.shape[0]


def metropolis_weights(g: GraphSnapshot) -> MixingMatrix:
    """
    Metropolis weights: w_sj = 1/(1 + max(d_s, d_j)) on edges, w_ss = 1 − Σ_j w_sj.

    Args:
        g: Graph snapshot

    Returns:
        MixingMatrix for the snapshot
    """
    degrees = g.degrees
    pairwise_max = np.maximum(degrees[:, None], degrees[None, :])
    weights = np.where(g.adjacency, 1.0 / (1.0 + pairwise_max), 0.0)
    np.fill_diagonal(weights, 1.0 - weights.sum(axis=1))
    return MixingMatrix(weights=weights, snapshot_ref=g.time_step)


class WeightCache:
    """Rebuilds Metropolis weights only when the adjacency changes."""

    def __init__(self) -> None:
        self._key: tuple[int, bytes] | None = None
        self._weights: MixingMatrix | None = None

    def get(self, g: GraphSnapshot) -> MixingMatrix:
        key = (g.time_step, g.adjacency.tobytes())
        if key != self._key or self._weights is None:
            self._key = key
            self._weights = metropolis_weights(g)
        return self._weights


def mix(values: np.ndarray, w: MixingMatrix) -> np.ndarray:
    """
    One synchronous mixing round: out_s = Σ_j w_sj · in_j.

    Args:
        values: Per-sensor payloads, shape (N_s, P)
        w: Mixing matrix

    Returns:
        Mixed payloads, same shape
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[0] != w.num_sensors:
        raise ValueError(
            f"expected one payload row per sensor ({w.num_sensors}), got {values.shape}"
        )
    return w.weights @ values


def disagreement(values: np.ndarray) -> float:
    """max_s ‖x_s − mean‖ over the sensor axis."""
    values = np.asarray(values, dtype=float)
    return float(np.max(np.linalg.norm(values - values.mean(axis=0), axis=1)))


def snapshot_for(snapshots: Sequence[GraphSnapshot], index: int) -> GraphSnapshot:
    """Snapshot used at round `index`; the last one repeats once the list runs out."""
    return snapshots[min(index, len(snapshots) - 1)]


@dataclass
class ConsensusResult:
    values: np.ndarray
    disagreement: list[float] = field(default_factory=list)


def average_consensus(
    values: np.ndarray,
    snapshots: Sequence[GraphSnapshot],
    rounds: int,
    cache: WeightCache | None = None,
    on_round: Callable[[int, np.ndarray], None] | None = None,
) -> ConsensusResult:
    """
    Run `rounds` mixing rounds, each with that round's snapshot weights.

    Args:
        values: Per-sensor payloads, shape (N_s, P)
        snapshots: Snapshot per round (the last repeats if fewer than rounds)
        rounds: Number of rounds, ≥ 0
        cache: Optional weight cache shared across calls
        on_round: Called with (round, values) after every round

    Returns:
        ConsensusResult with final values and the disagreement before the first
        and after every round
    """
    if rounds < 0:
        raise ValueError(f"rounds must be nonnegative, got {rounds}")
    cache = cache or WeightCache()
    current = np.array(values, dtype=float)
    result = ConsensusResult(values=current, disagreement=[disagreement(current)])
    for r in range(rounds):
        current = mix(current, cache.get(snapshot_for(snapshots, r)))
        result.disagreement.append(disagreement(current))
        if on_round:
            on_round(r + 1, current)
    result.values = current
    return result
