"""I-VT tracker module."""

from src.trackers.base_tracker import TrackerInfo
from src.trackers.i_vt.config import IVtConfig
from src.trackers.i_vt.tracker import IVtTracker, i_vt_time_step

TRACKER_INFO = TrackerInfo(
    type="i_vt",
    name="I-VT",
    description="Individual VT on each sensor's own measurements, no fusion",
    tracker_class=IVtTracker,
    config_schema=IVtConfig,
)

__all__ = ["TRACKER_INFO", "IVtConfig", "IVtTracker", "i_vt_time_step"]
