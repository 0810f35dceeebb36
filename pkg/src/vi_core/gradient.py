"""Local natural gradients of the per-sensor LM-ELBO."""

from __future__ import annotations

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str.__str__(self)

        def __format__(self, format_spec: str) -> str:
            return str.__format__(str(self), format_spec)

import numpy as np

from src.model.sensor import SensorModel
from src.sim.scans import Scan
from src.vi_core.association import AssociationPosterior, association_posterior
from src.vi_core.natural import NaturalParams, moments_from_nat


class GradientVariant(StrEnum):
    """canonical: prior pull (η−λ)/N_s. verbatim: the printed form, which doubles it."""

    CANONICAL = "canonical"
    VERBATIM = "verbatim"


def data_term(scan: Scan, sensor: SensorModel, assoc: AssociationPosterior) -> NaturalParams:
    """
    Measurement contribution shared by the gradient and the CAVI update.

    Returns:
        (Hᵀ R_k⁻¹ Σ_j y_j q_jk,  −½ Hᵀ R_k⁻¹ H Σ_j q_jk) per object
    """
    weights = assoc.object_weights()
    weighted_sum = weights.T @ scan.measurements
    mass = weights.sum(axis=0)
    lambda1 = np.einsum("ij,kjl,kl->ki", sensor.H.T, sensor.R_inv, weighted_sum)
    lambda2 = -0.5 * sensor.information * mass[:, None, None]
    return NaturalParams(lambda1, lambda2)


def natural_gradient_local(
    lambda_s: NaturalParams,
    eta_s: NaturalParams,
    scan: Scan,
    sensor: SensorModel,
    n_sensors: int,
    variant: GradientVariant | str = GradientVariant.CANONICAL,
    assoc: AssociationPosterior | None = None,
) -> NaturalParams:
    """
    Natural gradient of 𝓛_s with respect to (λ¹, λ²), without inverting the FIM.

    q*(θ) is recomputed from lambda_s unless `assoc` is given; it is treated as
    λ-independent when differentiating.

    Args:
        lambda_s: Sensor's current iterate
        eta_s: Sensor's predicted prior
        scan: Sensor's scan
        sensor: Sensor model
        n_sensors: Network size N_s
        variant: canonical or verbatim
        assoc: Precomputed association posterior at lambda_s

    Returns:
        Per-object (g¹, g²)

    Raises:
        NumericalError: If lambda_s is not a valid precision
    """
    variant = GradientVariant(variant)
    if assoc is None:
        assoc = association_posterior(lambda_s, scan, sensor)
    else:
        lambda_s.validate()
    data = data_term(scan, sensor, assoc)
    pull = (eta_s - lambda_s) * (1.0 / n_sensors)

    if variant is GradientVariant.CANONICAL:
        return data + pull

    posterior = moments_from_nat(lambda_s)
    prior = moments_from_nat(eta_s)
    post_precision = np.linalg.inv(posterior.cov)
    prior_precision = np.linalg.inv(prior.cov)
    mean_gap = np.einsum("kij,kj->ki", prior_precision, prior.mean) - np.einsum(
        "kij,kj->ki", post_precision, posterior.mean
    )
    extra = NaturalParams(
        mean_gap / n_sensors,
        (post_precision - prior_precision) / (2.0 * n_sensors),
    )
    return data + pull + extra
