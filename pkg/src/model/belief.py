"""Per-object Gaussian beliefs in moment form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.shared.errors import NumericalError

STATE_DIM = 4


def symmetrize(blocks: np.ndarray) -> np.ndarray:
    """Return (A + Aᵀ)/2 over the last two axes."""
    return 0.5 * (blocks + np.swapaxes(blocks, -1, -2))


def check_pd(blocks: np.ndarray, what: str = "covariance") -> None:
    """
    Raise NumericalError naming the first block that fails a Cholesky factorisation.

    Args:
        blocks: Array of shape (K, d, d)
        what: Name used in the error message
    """
    for k, block in enumerate(blocks):
        try:
            np.linalg.cholesky(block)
        except np.linalg.LinAlgError as e:
            raise NumericalError(
                f"{what} block for object {k} is not positive definite", object_index=k
            ) from e


def is_pd(block: np.ndarray) -> bool:
    """True when a single symmetric block factorises."""
    try:
        np.linalg.cholesky(block)
    except np.linalg.LinAlgError:
        return False
    return True


@dataclass(frozen=True)
class GaussianBelief:
    """Mean-field Gaussian over K objects, stored as per-object blocks.

    mean has shape (K, 4) (the stacked 4K state vector, one row per object);
    cov has shape (K, 4, 4). Cross-object covariance is identically zero.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.ndim != 2 or cov.ndim != 3 or cov.shape != (*mean.shape, mean.shape[1]):
            raise NumericalError(
                f"belief shapes do not match: mean {mean.shape}, cov {cov.shape}"
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def num_objects(self) -> int:
        return self.mean.shape[0]

    @property
    def dim(self) -> int:
        return self.mean.shape[1]

    def positions(self, H: np.ndarray) -> np.ndarray:
        """Project every object mean through H, shape (K, 2)."""
        return self.mean @ H.T

    def validate(self) -> GaussianBelief:
        """Check that every covariance block is symmetric PD."""
        if not np.allclose(self.cov, np.swapaxes(self.cov, -1, -2)):
            raise NumericalError("covariance blocks are not symmetric")
        check_pd(self.cov)
        return self

    @classmethod
    def diagonal(
        cls, means: np.ndarray, variances: np.ndarray | list[float]
    ) -> GaussianBelief:
        """Build a belief with the same diagonal covariance for every object."""
        means = np.asarray(means, dtype=float)
        block = np.diag(np.asarray(variances, dtype=float))
        return cls(means, np.broadcast_to(block, (means.shape[0], *block.shape)).copy())
