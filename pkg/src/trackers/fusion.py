"""GA and AA fusion rules for per-sensor Gaussian beliefs."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence

import numpy as np

from src.graph.mixing import WeightCache, average_consensus
from src.model.belief import GaussianBelief, symmetrize
from src.sim.network import GraphSnapshot
from src.vi_core.natural import NaturalParams, geometric_average, moments_from_nat

logger = logging.getLogger(__name__)


def ga_prior(etas: Sequence[NaturalParams]) -> NaturalParams:
    """Natural parameters of the normalised product Π_s p̂(X; η^s)^{1/N_s}."""
    if not etas:
        raise ValueError("GA fusion needs at least one prior")
    return geometric_average(list(etas))


def effective_prior_check(etas: Sequence[NaturalParams]) -> GaussianBelief:
    """
    Effective prior a network of heterogeneous sensors optimises against.

    The precision is the average of the sensors' precisions and the mean is the
    precision-weighted average of their means.
    """
    return moments_from_nat(ga_prior(etas))


def moment_payload(belief: GaussianBelief) -> np.ndarray:
    """Per object: μ then the upper triangle of E[xxᵀ] = Σ + μμᵀ, flattened."""
    rows, cols = np.triu_indices(belief.dim)
    second = belief.cov + belief.mean[:, :, None] * belief.mean[:, None, :]
    return np.concatenate([belief.mean, second[:, rows, cols]], axis=1).ravel()


def belief_from_payload(vector: np.ndarray, num_objects: int, dim: int) -> GaussianBelief:
    """Moment-match a fused payload back to a Gaussian: Σ = E[xxᵀ] − μμᵀ."""
    block = np.asarray(vector, dtype=float).reshape(num_objects, -1)
    rows, cols = np.triu_indices(dim)
    mean = block[:, :dim]
    second = np.zeros((num_objects, dim, dim))
    second[:, rows, cols] = block[:, dim:]
    second[:, cols, rows] = block[:, dim:]
    cov = second - mean[:, :, None] * mean[:, None, :]
    return GaussianBelief(mean, symmetrize(cov))


def aa_fuse(
    beliefs: Sequence[GaussianBelief],
    snapshots: Sequence[GraphSnapshot],
    rounds: int,
    cache: WeightCache | None = None,
    on_round: Callable[[int, list[GaussianBelief]], None] | None = None,
) -> list[GaussianBelief]:
    """
    Arithmetic-average fusion by average consensus on first and second moments.

    Objects are aligned by index across sensors. Each round mixes convex
    combinations of valid moments, so the matched covariances stay PSD.

    Args:
        beliefs: One belief per sensor
        snapshots: Graph for each round (the last one repeats)
        rounds: Consensus rounds
        cache: Weight cache reused across steps
        on_round: Called with (round, fused beliefs) after every round

    Returns:
        Fused belief per sensor
    """
    num_objects, dim = beliefs[0].num_objects, beliefs[0].dim

    def unpack(payload: np.ndarray) -> list[GaussianBelief]:
        return [belief_from_payload(row, num_objects, dim) for row in payload]

    def forward(round_index: int, payload: np.ndarray) -> None:
        if on_round:
            on_round(round_index, unpack(payload))

    result = average_consensus(
        np.stack([moment_payload(b) for b in beliefs]),
        snapshots,
        rounds,
        cache or WeightCache(),
        forward,
    )
    if not rounds:
        return list(beliefs)
    logger.debug(
        f"AA fusion over {rounds} rounds: moment disagreement "
        f"{result.disagreement[0]:.3g} -> {result.disagreement[-1]:.3g}"
    )
    return unpack(result.values)
