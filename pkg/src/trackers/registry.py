"""Tracker registry for discovering and managing trackers."""

import importlib
import logging
from pathlib import Path
from typing import cast

from src.trackers.base_tracker import BaseTracker, TrackerConfig, TrackerInfo

logger = logging.getLogger(__name__)


def discover_trackers() -> dict[str, TrackerInfo]:
    """
    Auto-discover all tracker modules in the trackers directory.

    Returns:
        Dictionary mapping tracker type to tracker info
    """
    trackers: dict[str, TrackerInfo] = {}
    trackers_dir = Path(__file__).parent

    for item in sorted(trackers_dir.iterdir()):
        if item.is_dir() and not item.name.startswith("_"):
            init_file = item / "__init__.py"
            if init_file.exists():
                try:
                    module = importlib.import_module(f"src.trackers.{item.name}")
                    if hasattr(module, "TRACKER_INFO"):
                        info = cast(TrackerInfo, module.TRACKER_INFO)
                        trackers[info.type] = info
                except ImportError:
                    logger.exception(f"Could not import tracker package {item.name}")

    return trackers


TRACKER_REGISTRY = discover_trackers()


def get_tracker_class(tracker_type: str) -> type[BaseTracker] | None:
    """Get the tracker class for a given tracker type."""
    tracker_info = TRACKER_REGISTRY.get(tracker_type)
    return tracker_info.tracker_class if tracker_info else None


def get_config_schema(tracker_type: str) -> type[TrackerConfig] | None:
    """Get the config schema for a given tracker type."""
    tracker_info = TRACKER_REGISTRY.get(tracker_type)
    return tracker_info.config_schema if tracker_info else None
