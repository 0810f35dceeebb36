"""I-VT configuration."""

from src.trackers.base_tracker import TrackerConfig


class IVtConfig(TrackerConfig):
    """Configuration for the individual tracker; only vi_iterations is used."""
