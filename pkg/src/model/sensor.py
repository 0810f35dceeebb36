"""NHPP measurement model: observation geometry, noise, clutter and Poisson rates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from src.model.belief import GaussianBelief, is_pd
from src.shared.errors import ConfigurationError

LOG_2PI = float(np.log(2.0 * np.pi))

# Position-extracting observation matrix for the [x¹, ẋ¹, x², ẋ²] state layout
POSITION_H = np.array([[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]])


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle over which clutter is uniform."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        if self.x_max <= self.x_min or self.y_max <= self.y_min:
            raise ConfigurationError(f"degenerate region {self}")

    @property
    def volume(self) -> float:
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)

    @property
    def diameter(self) -> float:
        return float(np.hypot(self.x_max - self.x_min, self.y_max - self.y_min))

    def contains(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(points)
        return (
            (points[:, 0] >= self.x_min)
            & (points[:, 0] <= self.x_max)
            & (points[:, 1] >= self.y_min)
            & (points[:, 1] <= self.y_max)
        )


@dataclass(frozen=True)
class SensorModel:
    """One sensor's measurement constants.

    H is 2×4, R holds one 2×2 noise covariance per object (K, 2, 2), volume is
    the clutter region area and rates is [Λ_0, Λ_1, ..., Λ_K].
    """

    H: np.ndarray
    R: np.ndarray
    volume: float
    rates: np.ndarray

    def __post_init__(self) -> None:
        H = np.asarray(self.H, dtype=float)
        R = np.asarray(self.R, dtype=float)
        rates = np.asarray(self.rates, dtype=float)
        if H.shape != (2, 4):
            raise ConfigurationError(f"H must be 2x4, got {H.shape}")
        if R.ndim != 3 or R.shape[1:] != (2, 2):
            raise ConfigurationError(f"R must have shape (K, 2, 2), got {R.shape}")
        if rates.shape != (R.shape[0] + 1,):
            raise ConfigurationError(
                f"expected {R.shape[0] + 1} Poisson rates for {R.shape[0]} objects, "
                f"got {rates.shape}"
            )
        for k, block in enumerate(R):
            if not np.allclose(block, block.T) or not is_pd(block):
                raise ConfigurationError(f"R for object {k + 1} must be symmetric PD")
        if self.volume <= 0:
            raise ConfigurationError(f"clutter volume must be positive, got {self.volume}")
        if np.any(rates < 0) or not np.all(np.isfinite(rates)):
            raise ConfigurationError("Poisson rates must be finite and nonnegative")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "rates", rates)

    @property
    def num_objects(self) -> int:
        return self.R.shape[0]

    @cached_property
    def R_inv(self) -> np.ndarray:
        return np.linalg.inv(self.R)

    @cached_property
    def R_logdet(self) -> np.ndarray:
        return np.linalg.slogdet(self.R)[1]

    @cached_property
    def information(self) -> np.ndarray:
        """Hᵀ R_k⁻¹ H per object, shape (K, 4, 4)."""
        return self.H.T @ self.R_inv @ self.H

    @classmethod
    def isotropic(
        cls,
        num_objects: int,
        noise_variance: float,
        clutter_rate: float,
        object_rate: float,
        volume: float,
        H: np.ndarray = POSITION_H,
    ) -> SensorModel:
        """Sensor with R_k = noise_variance·I₂ and equal object rates."""
        R = np.broadcast_to(noise_variance * np.eye(2), (num_objects, 2, 2)).copy()
        rates = np.concatenate([[clutter_rate], np.full(num_objects, object_rate)])
        return cls(H=H, R=R, volume=volume, rates=rates)


def object_loglik(
    measurements: np.ndarray,
    mean: np.ndarray,
    cov: np.ndarray | None,
    sensor: SensorModel,
) -> np.ndarray:
    """
    Expected log-likelihood of every measurement under every object origin.

    Evaluates log N(y_j; Hμ_k, R_k) − ½Tr(R_k⁻¹ H Σ_k Hᵀ); with cov=None the
    trace term is dropped and μ is treated as a point state.

    Args:
        measurements: Array of shape (M, 2)
        mean: Object means or states, shape (K, 4)
        cov: Object covariances (K, 4, 4) or None
        sensor: Sensor model

    Returns:
        Array of shape (M, K)
    """
    measurements = np.asarray(measurements, dtype=float).reshape(-1, 2)
    residual = measurements[:, None, :] - (mean @ sensor.H.T)[None, :, :]
    mahalanobis = np.einsum("mki,kij,mkj->mk", residual, sensor.R_inv, residual)
    loglik = -LOG_2PI - 0.5 * sensor.R_logdet[None, :] - 0.5 * mahalanobis
    if cov is not None:
        spread = sensor.H @ cov @ sensor.H.T
        loglik = loglik - 0.5 * np.einsum("kij,kji->k", sensor.R_inv, spread)[None, :]
    return loglik


def measurement_loglik(
    y: np.ndarray,
    k: int,
    target: GaussianBelief | np.ndarray,
    sensor: SensorModel,
) -> float:
    """
    Log-density of one measurement under origin k.

    Args:
        y: Measurement 2-vector
        k: Origin index, 0 for clutter and 1..K for objects
        target: Gaussian belief (expected log-likelihood form) or point states (K, 4)
        sensor: Sensor model

    Returns:
        log(1/V) for clutter, otherwise the (expected) Gaussian log-density
    """
    if not 0 <= k <= sensor.num_objects:
        raise ConfigurationError(f"origin {k} outside 0..{sensor.num_objects}")
    y = np.asarray(y, dtype=float)
    if y.shape != (2,) or not np.all(np.isfinite(y)):
        raise ConfigurationError(f"measurement must be a finite 2-vector, got {y}")
    if k == 0:
        return -float(np.log(sensor.volume))
    if isinstance(target, GaussianBelief):
        mean, cov = target.mean, target.cov
    else:
        mean, cov = np.asarray(target, dtype=float), None
    if mean.shape != (sensor.num_objects, sensor.H.shape[1]):
        raise ConfigurationError(
            f"state shape {mean.shape} does not match sensor with "
            f"{sensor.num_objects} objects"
        )
    return float(object_loglik(y[None, :], mean, cov, sensor)[0, k - 1])


def association_prior(sensor: SensorModel) -> np.ndarray:
    """
    Categorical prior over measurement origins: p(k) = Λ_k / Σ Λ.

    Returns:
        Array of K+1 probabilities summing to one
    """
    total = float(np.sum(sensor.rates))
    if total <= 0:
        raise ConfigurationError("association prior undefined: all Poisson rates are zero")
    return sensor.rates / total
