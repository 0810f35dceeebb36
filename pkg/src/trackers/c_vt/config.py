"""C-VT configuration."""

from src.trackers.base_tracker import TrackerConfig


class CVtConfig(TrackerConfig):
    """Configuration for the centralised tracker; only vi_iterations is used."""
