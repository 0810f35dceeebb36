"""Closed-form coordinate-ascent update of q(X) given association posteriors."""

from __future__ import annotations

from collections.abc import Sequence

from src.model.sensor import SensorModel
from src.sim.scans import Scan
from src.vi_core.association import AssociationPosterior
from src.vi_core.gradient import data_term
from src.vi_core.natural import NaturalParams


def cavi_state_update(
    eta: NaturalParams,
    scans: Sequence[Scan],
    sensors: Sequence[SensorModel],
    assoc: Sequence[AssociationPosterior],
) -> NaturalParams:
    """
    Zero of the summed canonical natural gradient for fixed q(θ).

    λ¹ = η¹ + Σ_s Hᵀ R⁻¹ Σ_j y_j q_jk and λ² = η² − ½ Σ_s Hᵀ R⁻¹ H Σ_j q_jk.
    The data term is negative semidefinite, so λ² stays negative definite.

    Args:
        eta: Predicted prior in natural form
        scans: Scans of the sensors in the set S
        sensors: Matching sensor models
        assoc: Matching association posteriors

    Returns:
        Updated natural parameters
    """
    if not len(scans) == len(sensors) == len(assoc):
        raise ValueError(
            f"got {len(scans)} scans, {len(sensors)} sensors, {len(assoc)} posteriors"
        )
    result = eta
    for scan, sensor, q in zip(scans, sensors, assoc, strict=True):
        result = result + data_term(scan, sensor, q)
    return result
