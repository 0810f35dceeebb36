"""Linear Gaussian object dynamics and the prediction step."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.model.belief import STATE_DIM, GaussianBelief, symmetrize
from src.shared.errors import ConfigurationError


def constant_velocity_blocks(tau: float, q: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Transition and process-noise matrices of the 2-D constant-velocity model.

    The state is ordered [x¹, ẋ¹, x², ẋ²]; each spatial dimension gets the block
    F = [[1, τ], [0, 1]] and Q = q·[[τ³/3, τ²/2], [τ²/2, τ]].

    Args:
        tau: Time between observations in seconds
        q: Process-noise intensity

    Returns:
        Tuple of (F, Q), both 4×4
    """
    f = np.array([[1.0, tau], [0.0, 1.0]])
    qd = q * np.array([[tau**3 / 3.0, tau**2 / 2.0], [tau**2 / 2.0, tau]])
    zeros = np.zeros((2, 2))
    F = np.block([[f, zeros], [zeros, f]])
    Q = np.block([[qd, zeros], [zeros, qd]])
    return F, Q


@dataclass(frozen=True)
class DynamicsModel:
    """Per-object transition F_k and process noise Q_k, shapes (K, 4, 4)."""

    F: np.ndarray
    Q: np.ndarray
    tau: float = 1.0

    def __post_init__(self) -> None:
        F = np.asarray(self.F, dtype=float)
        Q = np.asarray(self.Q, dtype=float)
        if F.ndim != 3 or F.shape != Q.shape or F.shape[1] != F.shape[2]:
            raise ConfigurationError(
                f"dynamics shapes do not match: F {F.shape}, Q {Q.shape}"
            )
        if not np.allclose(Q, np.swapaxes(Q, -1, -2)):
            raise ConfigurationError("process noise Q must be symmetric")
        if np.any(np.linalg.eigvalsh(symmetrize(Q)) < -1e-10):
            raise ConfigurationError("process noise Q must be positive semidefinite")
        if self.tau <= 0:
            raise ConfigurationError(f"tau must be positive, got {self.tau}")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "Q", Q)

    @property
    def num_objects(self) -> int:
        return self.F.shape[0]

    @classmethod
    def constant_velocity(
        cls, num_objects: int, tau: float = 1.0, q: float = 25.0
    ) -> DynamicsModel:
        """Identical constant-velocity dynamics for every object."""
        F, Q = constant_velocity_blocks(tau, q)
        return cls(
            F=np.broadcast_to(F, (num_objects, STATE_DIM, STATE_DIM)).copy(),
            Q=np.broadcast_to(Q, (num_objects, STATE_DIM, STATE_DIM)).copy(),
            tau=tau,
        )


def predict_belief(prior: GaussianBelief, dyn: DynamicsModel) -> GaussianBelief:
    """
    Push a belief through the dynamics: μ' = Fμ, Σ' = FΣFᵀ + Q per object.

    Args:
        prior: Posterior belief of the previous time step
        dyn: Dynamics model with one block per object

    Returns:
        Predicted belief with symmetrised covariance blocks
    """
    if prior.mean.shape != dyn.F.shape[:2]:
        raise ConfigurationError(
            f"belief has shape {prior.mean.shape} but dynamics expect {dyn.F.shape[:2]}"
        )
    mean = np.einsum("kij,kj->ki", dyn.F, prior.mean)
    cov = dyn.F @ prior.cov @ np.swapaxes(dyn.F, -1, -2) + dyn.Q
    return GaussianBelief(mean, symmetrize(cov))
