"""DeNG-VT tracker module."""

from src.trackers.base_tracker import TrackerInfo
from src.trackers.deng_vt.config import DengVtConfig
from src.trackers.deng_vt.tracker import (
    DengVtTracker,
    deng_vt_iterate,
    deng_vt_time_step,
)

TRACKER_INFO = TrackerInfo(
    type="deng_vt",
    name="DeNG-VT",
    description="Decentralised natural-gradient VT with gradient tracking",
    tracker_class=DengVtTracker,
    config_schema=DengVtConfig,
)

__all__ = [
    "TRACKER_INFO",
    "DengVtConfig",
    "DengVtTracker",
    "deng_vt_iterate",
    "deng_vt_time_step",
]
