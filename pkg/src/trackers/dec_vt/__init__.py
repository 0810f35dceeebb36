"""DeC-VT tracker module."""

from src.trackers.base_tracker import TrackerInfo
from src.trackers.dec_vt.config import DecVtConfig
from src.trackers.dec_vt.tracker import DecVtTracker, dec_vt_time_step

TRACKER_INFO = TrackerInfo(
    type="dec_vt",
    name="DeC-VT",
    description="Decentralised VT with average consensus inside every variational update",
    tracker_class=DecVtTracker,
    config_schema=DecVtConfig,
)

__all__ = ["TRACKER_INFO", "DecVtConfig", "DecVtTracker", "dec_vt_time_step"]
