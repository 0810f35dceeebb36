"""Closed-form LM-ELBO and fixed-form ELBO evaluation."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.model.belief import GaussianBelief
from src.model.sensor import SensorModel, association_prior, object_loglik
from src.sim.scans import Scan
from src.vi_core.association import AssociationPosterior, association_posterior
from src.vi_core.natural import NaturalParams, moments_from_nat

ROW_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ElboValue:
    """ELBO split into its three expectations.

    likelihood: E log p(Y|θ,X); state: −KL(q(X)‖prior) (scaled by 1/N_s for a
    local bound); association: E log p(θ)/q(θ).
    """

    likelihood: float
    state: float
    association: float

    @property
    def total(self) -> float:
        return self.likelihood + self.state + self.association


def gaussian_kl(q: GaussianBelief, p: GaussianBelief) -> float:
    """KL(q‖p) summed over the object blocks."""
    d = q.dim
    p_precision = np.linalg.inv(p.cov)
    gap = p.mean - q.mean
    trace = np.einsum("kij,kji->k", p_precision, q.cov)
    mahalanobis = np.einsum("ki,kij,kj->k", gap, p_precision, gap)
    logdet = np.linalg.slogdet(p.cov)[1] - np.linalg.slogdet(q.cov)[1]
    return float(0.5 * np.sum(trace + mahalanobis - d + logdet))


def _log_likelihood_table(
    belief: GaussianBelief, scan: Scan, sensor: SensorModel
) -> np.ndarray:
    table = np.empty((scan.num_measurements, sensor.num_objects + 1))
    table[:, 0] = -np.log(sensor.volume)
    table[:, 1:] = object_loglik(scan.measurements, belief.mean, belief.cov, sensor)
    return table


def _sensor_terms(
    belief: GaussianBelief, scan: Scan, sensor: SensorModel, probs: np.ndarray
) -> tuple[float, float]:
    """Expected log-likelihood and E log p(θ)/q(θ) for one sensor."""
    if scan.num_measurements == 0:
        return 0.0, 0.0
    likelihood = float(np.sum(probs * _log_likelihood_table(belief, scan, sensor)))
    with np.errstate(divide="ignore"):
        log_prior = np.log(association_prior(sensor))
        log_q = np.log(probs)
    positive = probs > 0
    contribution = np.where(
        positive, probs * (log_prior[None, :] - np.where(positive, log_q, 0.0)), 0.0
    )
    return likelihood, float(np.sum(contribution))


def _check_rows(rho: AssociationPosterior, scan: Scan) -> None:
    probs = rho.probs
    if probs.shape[0] != scan.num_measurements:
        raise ValueError(
            f"rho has {probs.shape[0]} rows for {scan.num_measurements} measurements"
        )
    if probs.size and (
        np.any(probs < 0)
        or np.any(probs > 1)
        or not np.allclose(probs.sum(axis=1), 1.0, rtol=0.0, atol=ROW_TOLERANCE)
    ):
        raise ValueError(f"association rows for sensor {rho.sensor_id} are not normalised")


def fixed_form_elbo(
    lam: NaturalParams,
    rho: Sequence[AssociationPosterior],
    eta: NaturalParams,
    scans: Sequence[Scan],
    sensors: Sequence[SensorModel],
) -> ElboValue:
    """
    𝓕(λ, ρ) with the association posteriors given explicitly.

    Raises:
        ValueError: If any row of rho is not a probability vector
    """
    belief = moments_from_nat(lam)
    likelihood = association = 0.0
    for q, scan, sensor in zip(rho, scans, sensors, strict=True):
        _check_rows(q, scan)
        lik, assoc = _sensor_terms(belief, scan, sensor, q.probs)
        likelihood += lik
        association += assoc
    state = -gaussian_kl(belief, moments_from_nat(eta))
    return ElboValue(likelihood, state, association)


def lm_elbo(
    lam: NaturalParams,
    eta: NaturalParams,
    scans: Sequence[Scan],
    sensors: Sequence[SensorModel],
) -> ElboValue:
    """𝓛(λ) = 𝓕(λ, ρ*(λ)) over every sensor in the set."""
    rho = [
        association_posterior(lam, scan, sensor)
        for scan, sensor in zip(scans, sensors, strict=True)
    ]
    return fixed_form_elbo(lam, rho, eta, scans, sensors)


def lm_elbo_local(
    lam: NaturalParams,
    eta: NaturalParams,
    scan: Scan,
    sensor: SensorModel,
    n_sensors: int,
) -> ElboValue:
    """Sensor-local 𝓛_s(λ): own data terms plus 1/N_s of the state term."""
    belief = moments_from_nat(lam)
    rho = association_posterior(lam, scan, sensor)
    likelihood, association = _sensor_terms(belief, scan, sensor, rho.probs)
    state = -gaussian_kl(belief, moments_from_nat(eta)) / n_sensors
    return ElboValue(likelihood, state, association)
