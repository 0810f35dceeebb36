"""DeC-VT configuration."""

from pydantic import Field

from src.trackers.base_tracker import TrackerConfig


class DecVtConfig(TrackerConfig):
    """Configuration for the consensus-based tracker."""

    consensus_rounds: int = Field(
        default=50,
        ge=0,
        description="Average-consensus rounds per variational iteration",
    )
