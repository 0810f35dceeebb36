"""Canonical (natural-parameter) form of the per-object Gaussian family."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from src.model.belief import GaussianBelief, check_pd, symmetrize


@dataclass(frozen=True)
class NaturalParams:
    """Per-object natural parameters: lambda1 = Σ⁻¹μ (K, d), lambda2 = −½Σ⁻¹ (K, d, d).

    The same container carries natural gradients and gradient-tracker state,
    which share the shape but not the negative-definiteness invariant; call
    `validate` where the invariant matters.
    """

    lambda1: np.ndarray
    lambda2: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambda1", np.asarray(self.lambda1, dtype=float))
        object.__setattr__(self, "lambda2", np.asarray(self.lambda2, dtype=float))

    @property
    def num_objects(self) -> int:
        return self.lambda1.shape[0]

    @property
    def dim(self) -> int:
        return self.lambda1.shape[1]

    def __add__(self, other: NaturalParams) -> NaturalParams:
        return NaturalParams(self.lambda1 + other.lambda1, self.lambda2 + other.lambda2)

    def __sub__(self, other: NaturalParams) -> NaturalParams:
        return NaturalParams(self.lambda1 - other.lambda1, self.lambda2 - other.lambda2)

    def __mul__(self, scale: float) -> NaturalParams:
        return NaturalParams(scale * self.lambda1, scale * self.lambda2)

    __rmul__ = __mul__

    def validate(self) -> NaturalParams:
        """Raise NumericalError unless −2·lambda2 is PD for every object."""
        check_pd(-2.0 * symmetrize(self.lambda2), "precision")
        return self

    def select(self, k: int) -> NaturalParams:
        return NaturalParams(self.lambda1[k : k + 1], self.lambda2[k : k + 1])

    def replace_object(self, k: int, other: NaturalParams) -> NaturalParams:
        lambda1 = self.lambda1.copy()
        lambda2 = self.lambda2.copy()
        lambda1[k] = other.lambda1[0]
        lambda2[k] = other.lambda2[0]
        return NaturalParams(lambda1, lambda2)

    @classmethod
    def zeros_like(cls, other: NaturalParams) -> NaturalParams:
        return cls(np.zeros_like(other.lambda1), np.zeros_like(other.lambda2))

    # Consensus payload layout: per object, lambda1 entries then the
    # row-major upper triangle (diagonal included) of lambda2.
    def flatten(self) -> np.ndarray:
        rows, cols = np.triu_indices(self.dim)
        return np.concatenate(
            [self.lambda1, self.lambda2[:, rows, cols]], axis=1
        ).ravel()

    @classmethod
    def unflatten(cls, vector: np.ndarray, num_objects: int, dim: int) -> NaturalParams:
        block = np.asarray(vector, dtype=float).reshape(num_objects, -1)
        rows, cols = np.triu_indices(dim)
        lambda2 = np.zeros((num_objects, dim, dim))
        lambda2[:, rows, cols] = block[:, dim:]
        lambda2[:, cols, rows] = block[:, dim:]
        return cls(block[:, :dim], lambda2)


def stack_flat(params: Iterable[NaturalParams]) -> np.ndarray:
    """Flatten each sensor's parameters into one row of an (N_s, P) payload."""
    return np.stack([p.flatten() for p in params])


def unstack_flat(payload: np.ndarray, num_objects: int, dim: int) -> list[NaturalParams]:
    return [NaturalParams.unflatten(row, num_objects, dim) for row in payload]


def inner(a: NaturalParams, b: NaturalParams) -> float:
    """Frobenius inner product ⟨a, b⟩ summed over objects."""
    return float(np.sum(a.lambda1 * b.lambda1) + np.sum(a.lambda2 * b.lambda2))


def nat_from_moments(belief: GaussianBelief) -> NaturalParams:
    """
    λ¹ = Σ⁻¹μ, λ² = −½Σ⁻¹ for every object.

    Raises:
        NumericalError: If a covariance block is not PD (carries the object index)
    """
    check_pd(belief.cov)
    precision = symmetrize(np.linalg.inv(belief.cov))
    return NaturalParams(
        lambda1=np.einsum("kij,kj->ki", precision, belief.mean),
        lambda2=-0.5 * precision,
    )


def moments_from_nat(lam: NaturalParams) -> GaussianBelief:
    """
    Σ = −½(λ²)⁻¹, μ = Σλ¹ for every object.

    Raises:
        NumericalError: If −2λ² is not PD (carries the object index)
    """
    precision = -2.0 * symmetrize(lam.lambda2)
    check_pd(precision, "precision")
    cov = symmetrize(np.linalg.inv(precision))
    return GaussianBelief(np.einsum("kij,kj->ki", cov, lam.lambda1), cov)


def fisher_vector_product(lam: NaturalParams, direction: NaturalParams) -> NaturalParams:
    """
    G(λ)·δ for the canonical Gaussian family, without forming G.

    G = ∇²A(λ) is the Jacobian of the mean parameters (μ, Σ + μμᵀ), so G·δ is
    their directional derivative along δ (δ² must be symmetric).

    Args:
        lam: Point of evaluation
        direction: Direction δ with the NaturalParams shape

    Returns:
        (dμ, dΣ + dμ μᵀ + μ dμᵀ) per object
    """
    belief = moments_from_nat(lam)
    mu, cov = belief.mean, belief.cov
    d_cov = 2.0 * cov @ direction.lambda2 @ cov
    d_mu = np.einsum("kij,kj->ki", d_cov, lam.lambda1) + np.einsum(
        "kij,kj->ki", cov, direction.lambda1
    )
    d_second = d_cov + d_mu[:, :, None] * mu[:, None, :] + mu[:, :, None] * d_mu[:, None, :]
    return NaturalParams(d_mu, d_second)


def geometric_average(params: list[NaturalParams]) -> NaturalParams:
    """Natural parameters of the normalised product Π_s p_s^{1/N_s}."""
    n = len(params)
    return NaturalParams(
        sum(p.lambda1 for p in params) / n,
        sum(p.lambda2 for p in params) / n,
    )
