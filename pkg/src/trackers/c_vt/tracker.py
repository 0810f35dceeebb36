"""C-VT: centralised variational tracking over every sensor's scan."""

from collections.abc import Sequence

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
from src.trackers.c_vt.config import CVtConfig
from src.trackers.tracker_utils import cavi_iterate, predict_etas
from src.vi_core.natural import NaturalParams


def c_vt_time_step(
    state: TrackerState,
    scans: Sequence[Scan],
    cfg: TrackerConfig,
    dynamics: DynamicsModel,
    sensors: Sequence[SensorModel],
    observer: IterationObserver | None = None,
) -> TrackerState:
    """
    Predict once, then alternate q*(θ) for every sensor and the summed CAVI update.

    The fusion centre holds the only belief, so `state` has a single entry and
    no neighbour exchange is counted.
    """
    (eta,) = predict_etas(state, dynamics)
    time_step = state.time_step + 1

    def notify(iteration: int, lam: NaturalParams) -> None:
        if observer:
            observer(IterationRecord(time_step, iteration, [lam], etas=[eta]))

    lam = cavi_iterate(eta, scans, sensors, cfg.vi_iterations, notify)
    return state.advance([SensorState(lam, eta)], 0)


class CVtTracker(BaseTracker):
    """Optimal centralised baseline that receives all measurements."""

    config_class = CVtConfig

    @property
    def num_estimators(self) -> int:
        return 1

    def step(
        self,
        state: TrackerState,
        scans: Sequence[Scan],
        snapshots: Sequence[GraphSnapshot],
        observer: IterationObserver | None = None,
    ) -> TrackerState:
        return c_vt_time_step(
            state, scans, self.config, self.dynamics, self.sensors, observer
        )
