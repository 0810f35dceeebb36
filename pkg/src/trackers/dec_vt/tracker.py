"""DeC-VT: CAVI with consensus-averaged sufficient statistics."""

import logging
from collections.abc import Sequence

from src.graph.mixing import WeightCache, average_consensus
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
from src.trackers.dec_vt.config import DecVtConfig
from src.trackers.tracker_utils import predict_etas
from src.vi_core.association import association_posterior
from src.vi_core.gradient import data_term
from src.vi_core.natural import stack_flat, unstack_flat

logger = logging.getLogger(__name__)


def dec_vt_time_step(
    state: TrackerState,
    scans: Sequence[Scan],
    snapshots: Sequence[GraphSnapshot],
    cfg: TrackerConfig,
    dynamics: DynamicsModel,
    sensors: Sequence[SensorModel],
    observer: IterationObserver | None = None,
    cache: WeightCache | None = None,
) -> TrackerState:
    """
    Every variational iteration waits for a full consensus on the statistics.

    Each sensor forms its local statistics Hᵀ R⁻¹ Σ_j y_j q_jk and
    −½ Hᵀ R⁻¹ H Σ_j q_jk, scaled by N_s so the network average estimates the
    network sum, and applies the CAVI update with the consensus estimate. With
    zero rounds a sensor only has its own unscaled statistics, which is I-VT.
    CI grows by vi_iterations × consensus_rounds.
    """
    cache = cache or WeightCache()
    etas = predict_etas(state, dynamics)
    n_sensors = len(etas)
    num_objects, dim = etas[0].num_objects, etas[0].dim
    time_step = state.time_step + 1
    rounds = cfg.consensus_rounds

    lambdas = list(etas)
    if observer:
        observer(IterationRecord(time_step, 0, lambdas, etas=etas))
    for it in range(cfg.vi_iterations):
        stats = [
            data_term(
                scans[s],
                sensors[s],
                association_posterior(lambdas[s], scans[s], sensors[s]),
            )
            for s in range(n_sensors)
        ]
        if rounds > 0:
            offset = min(it * rounds, len(snapshots) - 1)
            result = average_consensus(
                n_sensors * stack_flat(stats), snapshots[offset:], rounds, cache
            )
            stats = unstack_flat(result.values, num_objects, dim)
            logger.debug(
                f"DeC-VT step {time_step} iteration {it + 1}: "
                f"disagreement {result.disagreement[0]:.3g} -> "
                f"{result.disagreement[-1]:.3g}"
            )
        lambdas = [etas[s] + stats[s] for s in range(n_sensors)]
        if observer:
            observer(IterationRecord(time_step, it + 1, lambdas, etas=etas))

    new_sensors = [SensorState(lam, eta) for lam, eta in zip(lambdas, etas, strict=True)]
    return state.advance(new_sensors, cfg.vi_iterations * rounds)


class DecVtTracker(BaseTracker):
    """Consensus-based decentralised VT; exact only as the rounds grow."""

    config_class = DecVtConfig

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
        return self.config.vi_iterations * self.config.consensus_rounds

    def step(
        self,
        state: TrackerState,
        scans: Sequence[Scan],
        snapshots: Sequence[GraphSnapshot],
        observer: IterationObserver | None = None,
    ) -> TrackerState:
        return dec_vt_time_step(
            state,
            scans,
            snapshots,
            self.config,
            self.dynamics,
            self.sensors,
            observer,
            self._cache,
        )
