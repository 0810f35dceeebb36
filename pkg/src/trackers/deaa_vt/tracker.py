"""DeAA-VT: local VT followed by arithmetic-average fusion of the posteriors."""

from collections.abc import Sequence

from src.graph.mixing import WeightCache
from src.model.belief import GaussianBelief
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
from src.trackers.deaa_vt.config import DeaaVtConfig
from src.trackers.fusion import aa_fuse
from src.trackers.tracker_utils import cavi_iterate, predict_etas
from src.vi_core.natural import moments_from_nat, nat_from_moments


def deaa_vt_time_step(
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
    Run I-VT at every sensor, then AA-fuse per object over consensus_rounds rounds.

    The observer sees the local posteriors as iteration 0 and the fused beliefs
    after each round. CI grows by consensus_rounds.
    """
    etas = predict_etas(state, dynamics)
    time_step = state.time_step + 1
    local = [
        cavi_iterate(eta, [scans[s]], [sensors[s]], cfg.vi_iterations)
        for s, eta in enumerate(etas)
    ]
    if observer:
        observer(IterationRecord(time_step, 0, local, etas=etas))

    def notify(round_index: int, beliefs: list[GaussianBelief]) -> None:
        if observer:
            observer(
                IterationRecord(
                    time_step,
                    round_index,
                    [nat_from_moments(b) for b in beliefs],
                    etas=etas,
                )
            )

    fused = aa_fuse(
        [moments_from_nat(lam) for lam in local],
        snapshots,
        cfg.consensus_rounds,
        cache,
        notify if observer else None,
    )
    new_sensors = [
        SensorState(nat_from_moments(belief), eta)
        for belief, eta in zip(fused, etas, strict=True)
    ]
    return state.advance(new_sensors, cfg.consensus_rounds)


class DeaaVtTracker(BaseTracker):
    """Suboptimal AA-fusion baseline."""

    config_class = DeaaVtConfig

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
        return self.config.consensus_rounds

    def step(
        self,
        state: TrackerState,
        scans: Sequence[Scan],
        snapshots: Sequence[GraphSnapshot],
        observer: IterationObserver | None = None,
    ) -> TrackerState:
        return deaa_vt_time_step(
            state,
            scans,
            snapshots,
            self.config,
            self.dynamics,
            self.sensors,
            observer,
            self._cache,
        )
