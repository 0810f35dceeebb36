"""DeNG-VT: decentralised natural-gradient variational tracking."""

import logging
from collections.abc import Sequence

from src.graph.mixing import WeightCache, snapshot_for
from src.model.dynamics import DynamicsModel
from src.model.sensor import SensorModel
from src.sim.network import GraphSnapshot
from src.sim.scans import Scan
from src.trackers.base_tracker import (
    BaseTracker,
    IterationObserver,
    IterationRecord,
    SensorState,
    TrackerConfig,
    TrackerState,
)
from src.trackers.deng_vt.config import DengVtConfig
from src.trackers.tracker_utils import damped_step, mix_params, predict_etas
from src.vi_core.gradient import natural_gradient_local
from src.vi_core.natural import NaturalParams

logger = logging.getLogger(__name__)


def deng_vt_iterate(
    etas: Sequence[NaturalParams],
    scans: Sequence[Scan],
    sensors: Sequence[SensorModel],
    snapshots: Sequence[GraphSnapshot],
    cfg: TrackerConfig,
    time_step: int = 0,
    observer: IterationObserver | None = None,
    cache: WeightCache | None = None,
) -> tuple[list[NaturalParams], list[NaturalParams] | None]:
    """
    Run I_max synchronous DNGD iterations from λ^s(0) = η^s.

    With gradient tracking each sensor keeps ĝ^s, initialised to its local
    natural gradient, and iterates
        λ^s(i+1) = Σ_j w_sj λ^j(i) + α ĝ^s(i)
        ĝ^s(i+1) = Σ_j w_sj ĝ^j(i) + ∇̂𝓛_s(λ^s(i+1)) − ∇̂𝓛_s(λ^s(i)).
    Without it the step uses ∇̂𝓛_s(λ^s(i)) directly.

    Args:
        etas: Per-sensor predicted priors
        scans: Per-sensor scans
        sensors: Per-sensor models
        snapshots: Graph for each iteration (the last one repeats)
        cfg: Tracker configuration
        time_step: Step index reported to the observer
        observer: Called for iteration 0 and after every iteration
        cache: Weight cache reused across steps

    Returns:
        Tuple of (final λ^s, final ĝ^s or None without gradient tracking)
    """
    n_sensors = len(etas)
    cache = cache or WeightCache()

    def local_gradient(s: int, lam: NaturalParams) -> NaturalParams:
        return natural_gradient_local(
            lam, etas[s], scans[s], sensors[s], n_sensors, cfg.gradient_variant
        )

    lambdas = list(etas)
    local = [local_gradient(s, lambdas[s]) for s in range(n_sensors)]
    trackers = list(local) if cfg.gradient_tracking else None

    def notify(iteration: int) -> None:
        if observer:
            observer(
                IterationRecord(
                    time_step,
                    iteration,
                    lambdas,
                    etas=list(etas),
                    grad_trackers=trackers,
                    local_grads=local,
                )
            )

    notify(0)
    for i in range(cfg.max_iterations):
        w = cache.get(snapshot_for(snapshots, i))
        mixed = mix_params(lambdas, w)
        direction = trackers if trackers is not None else local
        lambdas = [
            damped_step(mixed[s], direction[s], cfg.alpha, sensor=s, iteration=i + 1)
            for s in range(n_sensors)
        ]
        new_local = [local_gradient(s, lambdas[s]) for s in range(n_sensors)]
        if trackers is not None:
            mixed_trackers = mix_params(trackers, w)
            trackers = [
                mixed_trackers[s] + new_local[s] - local[s] for s in range(n_sensors)
            ]
        local = new_local
        notify(i + 1)

    return lambdas, trackers


def deng_vt_time_step(
    state: TrackerState,
    scans: Sequence[Scan],
    snapshots: Sequence[GraphSnapshot],
    cfg: TrackerConfig,
    dynamics: DynamicsModel,
    sensors: Sequence[SensorModel],
    observer: IterationObserver | None = None,
    cache: WeightCache | None = None,
) -> TrackerState:
    """Predict at every sensor, then run the DNGD iterations; CI grows by I_max."""
    etas = predict_etas(state, dynamics)
    time_step = state.time_step + 1
    lambdas, trackers = deng_vt_iterate(
        etas, scans, sensors, snapshots, cfg, time_step, observer, cache
    )
    logger.debug(
        f"DeNG-VT step {time_step}: {len(etas)} sensors, {cfg.max_iterations} iterations"
    )
    new_sensors = [
        SensorState(lam, eta, trackers[s] if trackers is not None else None)
        for s, (lam, eta) in enumerate(zip(lambdas, etas, strict=True))
    ]
    return state.advance(new_sensors, cfg.max_iterations)


class DengVtTracker(BaseTracker):
    """Every sensor climbs its own LM-ELBO while tracking the network gradient."""

    config_class = DengVtConfig

    def __init__(
        self,
        config: TrackerConfig,
        dynamics: DynamicsModel,
        sensors: Sequence[SensorModel],
    ) -> None:
        super().__init__(config, dynamics, sensors)
        self._cache = WeightCache()

    @property
    def communication_rounds(self) -> int:
        return self.config.max_iterations

    def step(
        self,
        state: TrackerState,
        scans: Sequence[Scan],
        snapshots: Sequence[GraphSnapshot],
        observer: IterationObserver | None = None,
    ) -> TrackerState:
        return deng_vt_time_step(
            state,
            scans,
            snapshots,
            self.config,
            self.dynamics,
            self.sensors,
            observer,
            self._cache,
        )
