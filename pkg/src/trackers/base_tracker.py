"""Base tracker interface, shared state and configuration."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.model.belief import GaussianBelief
from src.model.dynamics import DynamicsModel
from src.model.sensor import SensorModel
from src.sim.network import GraphSnapshot
from src.sim.scans import Scan
from src.vi_core.gradient import GradientVariant
from src.vi_core.natural import NaturalParams, moments_from_nat, nat_from_moments


class TrackerConfig(BaseModel):
    """Base config class for trackers."""

    model_config = ConfigDict(extra="forbid")

    alpha: float = Field(default=1.0, gt=0, description="Natural-gradient step size")
    max_iterations: int = Field(
        default=100, ge=0, description="DNGD iterations per time step (I_max)"
    )
    gradient_variant: GradientVariant = Field(
        default=GradientVariant.CANONICAL,
        description="'canonical' natural gradient or the 'verbatim' printed form",
    )
    consensus_rounds: int = Field(
        default=0, ge=0, description="Average-consensus rounds per fusion"
    )
    vi_iterations: int = Field(
        default=20, ge=0, description="Variational update iterations per time step"
    )
    gradient_tracking: bool = Field(
        default=True,
        description="Track the network-average gradient; off runs plain DGD",
    )


@dataclass
class SensorState:
    """What one sensor holds between (and during) time steps."""

    lam: NaturalParams
    eta: NaturalParams | None = None
    grad_tracker: NaturalParams | None = None

    def belief(self) -> GaussianBelief:
        return moments_from_nat(self.lam)


@dataclass
class TrackerState:
    """Per-sensor iterates plus communication-iteration accounting.

    ci_per_step[n-1] is the number of neighbour exchanges spent at step n.
    """

    sensors: list[SensorState]
    time_step: int = 0
    ci_per_step: list[int] = field(default_factory=list)

    @property
    def num_sensors(self) -> int:
        return len(self.sensors)

    @property
    def total_ci(self) -> int:
        return sum(self.ci_per_step)

    def beliefs(self) -> list[GaussianBelief]:
        return [s.belief() for s in self.sensors]

    def advance(self, sensors: list[SensorState], ci: int) -> TrackerState:
        return TrackerState(sensors, self.time_step + 1, [*self.ci_per_step, ci])

    @classmethod
    def initial(
        cls, prior: GaussianBelief | Sequence[GaussianBelief], num_sensors: int
    ) -> TrackerState:
        """Start every sensor from `prior`, or sensor s from prior[s]."""
        priors = [prior] * num_sensors if isinstance(prior, GaussianBelief) else list(prior)
        if len(priors) != num_sensors:
            raise ValueError(f"got {len(priors)} priors for {num_sensors} sensors")
        return cls([SensorState(nat_from_moments(p)) for p in priors])


@dataclass(frozen=True)
class IterationRecord:
    """Snapshot of every sensor's iterate after one inner iteration."""

    time_step: int
    iteration: int
    lambdas: list[NaturalParams]
    etas: list[NaturalParams] | None = None
    grad_trackers: list[NaturalParams] | None = None
    local_grads: list[NaturalParams] | None = None


IterationObserver = Callable[[IterationRecord], None]


class BaseTracker(ABC):
    """Base class for all trackers."""

    config_class: type[TrackerConfig] = TrackerConfig

    def __init__(
        self,
        config: TrackerConfig,
        dynamics: DynamicsModel,
        sensors: Sequence[SensorModel],
    ) -> None:
        self.config = config
        self.dynamics = dynamics
        self.sensors = list(sensors)

    @property
    def num_estimators(self) -> int:
        """How many beliefs the tracker maintains (one per sensor by default)."""
        return len(self.sensors)

    @property
    def communication_rounds(self) -> int:
        """Neighbour exchanges per time step, i.e. the CI added by `step`."""
        return 0

    def initial_state(
        self, prior: GaussianBelief | Sequence[GaussianBelief]
    ) -> TrackerState:
        return TrackerState.initial(prior, self.num_estimators)

    @abstractmethod
    def step(
        self,
        state: TrackerState,
        scans: Sequence[Scan],
        snapshots: Sequence[GraphSnapshot],
        observer: IterationObserver | None = None,
    ) -> TrackerState:
        """
        Advance every sensor's belief by one time step.

        Args:
            state: State after the previous step
            scans: One scan per sensor for this step
            snapshots: Graph snapshot(s) for this step's iterations
            observer: Called after every inner iteration

        Returns:
            New state holding this step's posteriors
        """
        pass

    def estimates(self, state: TrackerState) -> list[np.ndarray]:
        """Object position estimates, one (K, 2) array per maintained belief."""
        H = self.sensors[0].H
        return [belief.positions(H) for belief in state.beliefs()]


@dataclass
class TrackerInfo:
    """Information about a registered tracker."""

    type: str
    name: str
    description: str
    tracker_class: type[BaseTracker]
    config_schema: type[TrackerConfig]
