"""I-VT: every sensor tracks alone on its own scan."""

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
from src.trackers.i_vt.config import IVtConfig
from src.trackers.tracker_utils import cavi_iterate, predict_etas
from src.vi_core.natural import NaturalParams


def i_vt_time_step(
    state: TrackerState,
    scans: Sequence[Scan],
    cfg: TrackerConfig,
    dynamics: DynamicsModel,
    sensors: Sequence[SensorModel],
    observer: IterationObserver | None = None,
) -> TrackerState:
    """C-VT restricted to each sensor's own scan; no communication, CI += 0."""
    etas = predict_etas(state, dynamics)
    time_step = state.time_step + 1
    history: list[list[NaturalParams]] = [[] for _ in range(cfg.vi_iterations + 1)]

    def record(iteration: int, lam: NaturalParams) -> None:
        history[iteration].append(lam)

    lambdas = []
    for s, eta in enumerate(etas):
        lambdas.append(
            cavi_iterate(eta, [scans[s]], [sensors[s]], cfg.vi_iterations, record)
        )

    if observer:
        for iteration, lams in enumerate(history):
            observer(IterationRecord(time_step, iteration, lams, etas=etas))

    return state.advance(
        [SensorState(lam, eta) for lam, eta in zip(lambdas, etas, strict=True)], 0
    )


class IVtTracker(BaseTracker):
    """Baseline with no sensor fusion."""

    config_class = IVtConfig

    def step(
        self,
        state: TrackerState,
        scans: Sequence[Scan],
        snapshots: Sequence[GraphSnapshot],
        observer: IterationObserver | None = None,
    ) -> TrackerState:
        return i_vt_time_step(
            state, scans, self.config, self.dynamics, self.sensors, observer
        )
