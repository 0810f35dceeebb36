"""DeNG-VT configuration."""

from pydantic import Field

from src.trackers.base_tracker import TrackerConfig


class DengVtConfig(TrackerConfig):
    """Configuration for the decentralised natural-gradient tracker."""

    max_iterations: int = Field(
        default=100, ge=0, description="DNGD iterations per time step (I_max)"
    )
