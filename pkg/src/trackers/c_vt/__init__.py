"""C-VT tracker module."""

from src.trackers.base_tracker import TrackerInfo
from src.trackers.c_vt.config import CVtConfig
from src.trackers.c_vt.tracker import CVtTracker, c_vt_time_step

TRACKER_INFO = TrackerInfo(
    type="c_vt",
    name="C-VT",
    description="Centralised VT fusing all measurements at one node",
    tracker_class=CVtTracker,
    config_schema=CVtConfig,
)

__all__ = ["TRACKER_INFO", "CVtConfig", "CVtTracker", "c_vt_time_step"]
