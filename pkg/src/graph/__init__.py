"""Mixing weights and consensus primitives shared by decentralised trackers."""

from src.graph.mixing import (
    ConsensusResult,
    MixingMatrix,
    WeightCache,
    average_consensus,
    disagreement,
    metropolis_weights,
    mix,
    snapshot_for,
)

__all__ = [
    "ConsensusResult",
    "MixingMatrix",
    "WeightCache",
    "average_consensus",
    "disagreement",
    "metropolis_weights",
    "mix",
    "snapshot_for",
]
