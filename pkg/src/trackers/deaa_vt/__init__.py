"""DeAA-VT tracker module."""

from src.trackers.base_tracker import TrackerInfo
from src.trackers.deaa_vt.config import DeaaVtConfig
from src.trackers.deaa_vt.tracker import DeaaVtTracker, deaa_vt_time_step

TRACKER_INFO = TrackerInfo(
    type="deaa_vt",
    name="DeAA-VT",
    description="Local VT with distributed arithmetic-average fusion of posteriors",
    tracker_class=DeaaVtTracker,
    config_schema=DeaaVtConfig,
)

__all__ = ["TRACKER_INFO", "DeaaVtConfig", "DeaaVtTracker", "deaa_vt_time_step"]
