"""Building blocks shared by the tracker implementations."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence

import numpy as np

from src.graph.mixing import MixingMatrix, mix
from src.model.belief import is_pd, symmetrize
from src.model.dynamics import DynamicsModel, predict_belief
from src.model.sensor import SensorModel
from src.shared.errors import TrackerDivergedError
from src.sim.scans import Scan
from src.trackers.base_tracker import TrackerState
from src.vi_core.association import association_posterior
from src.vi_core.cavi import cavi_state_update
from src.vi_core.natural import NaturalParams, moments_from_nat, nat_from_moments

logger = logging.getLogger(__name__)

MAX_HALVINGS = 20


def predict_etas(state: TrackerState, dynamics: DynamicsModel) -> list[NaturalParams]:
    """Predicted prior η^s for every maintained belief."""
    return [
        nat_from_moments(predict_belief(moments_from_nat(s.lam), dynamics))
        for s in state.sensors
    ]


def mix_params(params: Sequence[NaturalParams], w: MixingMatrix) -> list[NaturalParams]:
    """One synchronous mixing round applied to full (λ¹, λ²) arrays."""
    n = len(params)
    lambda1 = np.stack([p.lambda1 for p in params])
    lambda2 = np.stack([p.lambda2 for p in params])
    mixed1 = mix(lambda1.reshape(n, -1), w).reshape(lambda1.shape)
    mixed2 = mix(lambda2.reshape(n, -1), w).reshape(lambda2.shape)
    return [NaturalParams(mixed1[s], mixed2[s]) for s in range(n)]


def damped_step(
    base: NaturalParams,
    direction: NaturalParams,
    alpha: float,
    sensor: int,
    iteration: int,
) -> NaturalParams:
    """
    base + α·direction, halving α per object until −2λ² stays positive definite.

    Raises:
        TrackerDivergedError: If MAX_HALVINGS halvings do not restore definiteness
    """
    lambda1 = base.lambda1 + alpha * direction.lambda1
    lambda2 = base.lambda2 + alpha * direction.lambda2
    for k in range(base.num_objects):
        step = alpha
        halvings = 0
        while not is_pd(-2.0 * symmetrize(lambda2[k])):
            if halvings == MAX_HALVINGS:
                raise TrackerDivergedError(
                    f"precision left the PD cone after {MAX_HALVINGS} step halvings",
                    sensor=sensor,
                    object_index=k,
                    iteration=iteration,
                )
            step /= 2.0
            halvings += 1
            lambda1[k] = base.lambda1[k] + step * direction.lambda1[k]
            lambda2[k] = base.lambda2[k] + step * direction.lambda2[k]
        if halvings:
            logger.warning(
                f"Damped step for sensor {sensor}, object {k} at iteration {iteration} "
                f"to {step:.3g}"
            )
    return NaturalParams(lambda1, lambda2)


def cavi_iterate(
    eta: NaturalParams,
    scans: Sequence[Scan],
    sensors: Sequence[SensorModel],
    iterations: int,
    on_iteration: Callable[[int, NaturalParams], None] | None = None,
) -> NaturalParams:
    """
    Alternate q*(θ) and the closed-form q(X) update, starting from λ = η.

    Args:
        eta: Predicted prior
        scans: Scans fused by this estimator
        sensors: Matching sensor models
        iterations: Number of alternations
        on_iteration: Called with (i, λ(i)) for i = 0..iterations

    Returns:
        λ after the last alternation
    """
    lam = eta
    if on_iteration:
        on_iteration(0, lam)
    for i in range(iterations):
        assoc = [
            association_posterior(lam, scan, sensor)
            for scan, sensor in zip(scans, sensors, strict=True)
        ]
        lam = cavi_state_update(eta, scans, sensors, assoc)
        if on_iteration:
            on_iteration(i + 1, lam)
    return lam
