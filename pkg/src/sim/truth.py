"""Ground-truth trajectory generation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.model.dynamics import DynamicsModel
from src.model.sensor import Region
from src.sim.streams import Stream, stream_rng


@dataclass(frozen=True)
class GroundTruth:
    """Object states for time steps 1..T.

    initial holds X_0 (K, 4); states holds X_1..X_T with shape (T, K, 4).
    """

    initial: np.ndarray
    states: np.ndarray

    @property
    def num_steps(self) -> int:
        return self.states.shape[0]

    @property
    def num_objects(self) -> int:
        return self.states.shape[1]

    def positions(self, step: int) -> np.ndarray:
        """Positions at 1-indexed time step `step`, shape (K, 2)."""
        return self.states[step - 1][:, [0, 2]]


def simulate_truth(
    init_states: np.ndarray,
    dyn: DynamicsModel,
    T: int,
    rng_seed: int,
    run: int = 0,
) -> GroundTruth:
    """
    Propagate every object independently: X_n = F X_{n-1} + w, w ~ N(0, Q).

    Args:
        init_states: X_0, shape (K, 4)
        dyn: Dynamics model with K blocks
        T: Number of steps to simulate
        rng_seed: Master seed
        run: Monte Carlo run index

    Returns:
        GroundTruth with T steps
    """
    init_states = np.asarray(init_states, dtype=float)
    K, d = init_states.shape
    states = np.empty((T, K, d))
    previous = init_states
    for n in range(T):
        rng = stream_rng(rng_seed, Stream.TRUTH, run, n + 1)
        noise = np.zeros((K, d))
        for k in range(K):
            if np.any(dyn.Q[k]):
                noise[k] = rng.multivariate_normal(np.zeros(d), dyn.Q[k])
        previous = np.einsum("kij,kj->ki", dyn.F, previous) + noise
        states[n] = previous
    return GroundTruth(initial=init_states, states=states)


def place_objects(
    num_objects: int,
    area: Region,
    max_speed: float,
    rng_seed: int,
    run: int = 0,
) -> np.ndarray:
    """
    Place objects uniformly in a rectangle with uniform random velocities.

    Returns:
        Initial states [x¹, ẋ¹, x², ẋ²], shape (K, 4)
    """
    rng = stream_rng(rng_seed, Stream.OBJECTS, run)
    x = rng.uniform(area.x_min, area.x_max, num_objects)
    y = rng.uniform(area.y_min, area.y_max, num_objects)
    vx, vy = rng.uniform(-max_speed, max_speed, (2, num_objects))
    return np.column_stack([x, vx, y, vy])
