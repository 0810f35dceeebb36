"""Free-form optimal association posterior q*(θ) for one sensor."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from src.model.sensor import SensorModel, association_prior, object_loglik
from src.sim.scans import Scan
from src.vi_core.natural import NaturalParams, moments_from_nat


@dataclass(frozen=True)
class AssociationPosterior:
    """Row j holds q(θ_j = k) for k = 0 (clutter), 1..K; shape (M, K+1)."""

    sensor_id: int
    probs: np.ndarray

    @property
    def num_measurements(self) -> int:
        return self.probs.shape[0]

    def object_weights(self) -> np.ndarray:
        """Columns 1..K, shape (M, K)."""
        return self.probs[:, 1:]


def association_logits(lam: NaturalParams, scan: Scan, sensor: SensorModel) -> np.ndarray:
    """
    Unnormalised log weights log(Λ_0/V) and log(Λ_k l_k), shape (M, K+1).

    Zero rates give −inf entries.
    """
    belief = moments_from_nat(lam)
    with np.errstate(divide="ignore"):
        log_rates = np.log(sensor.rates)
    logits = np.empty((scan.num_measurements, sensor.num_objects + 1))
    logits[:, 0] = log_rates[0] - np.log(sensor.volume)
    logits[:, 1:] = log_rates[None, 1:] + object_loglik(
        scan.measurements, belief.mean, belief.cov, sensor
    )
    return logits


def association_posterior(
    lam: NaturalParams, scan: Scan, sensor: SensorModel
) -> AssociationPosterior:
    """
    q*(θ_j) ∝ (Λ_0/V)·δ[θ_j=0] + Σ_k Λ_k l_k δ[θ_j=k], normalised in the log domain.

    Rows whose weights are all zero fall back to the association prior.

    Args:
        lam: Current natural parameters of q(X)
        scan: Sensor scan (may be empty)
        sensor: Sensor model

    Returns:
        AssociationPosterior with one row per measurement
    """
    K = sensor.num_objects
    if scan.num_measurements == 0:
        return AssociationPosterior(scan.sensor_id, np.zeros((0, K + 1)))

    logits = association_logits(lam, scan, sensor)
    norm = logsumexp(logits, axis=1, keepdims=True)
    degenerate = ~np.isfinite(norm[:, 0])
    with np.errstate(invalid="ignore"):
        probs = np.exp(logits - norm)
    if np.any(degenerate):
        probs[degenerate] = association_prior(sensor)
    return AssociationPosterior(scan.sensor_id, probs)
