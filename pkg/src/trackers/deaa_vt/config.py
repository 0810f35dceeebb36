"""DeAA-VT configuration."""

from pydantic import Field

from src.trackers.base_tracker import TrackerConfig


class DeaaVtConfig(TrackerConfig):
    """Configuration for the AA-fusion tracker."""

    consensus_rounds: int = Field(
        default=20,
        ge=0,
        description="Average-consensus rounds on the local posteriors per step",
    )
