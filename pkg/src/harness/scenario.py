"""Scenario files: every experimental constant, validated on load."""

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.model.dynamics import DynamicsModel
from src.model.sensor import POSITION_H, Region, SensorModel
from src.shared.config import settings
from src.shared.errors import ConfigurationError, ReportError
from src.sim.network import NetworkPolicy
from src.trackers.base_tracker import TrackerConfig
from src.trackers.registry import TRACKER_REGISTRY, get_config_schema
from src.vi_core.gradient import GradientVariant

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DynamicsSpec(_Strict):
    tau: float = Field(default=1.0, gt=0, description="Sampling interval in seconds")
    q: float = Field(default=25.0, ge=0, description="Process-noise intensity")


class SensorSpec(_Strict):
    noise_variance: float = Field(
        default=100.0, gt=0, description="R_k = noise_variance · I for every object"
    )
    clutter_rate: float = Field(default=100.0, ge=0, description="Λ_0")
    object_rate: float = Field(default=1.0, ge=0, description="Λ_k, k ≥ 1")


class RegionSpec(_Strict):
    x_min: float = -1000.0
    x_max: float = 1000.0
    y_min: float = -1000.0
    y_max: float = 1000.0

    def to_region(self) -> Region:
        return Region(self.x_min, self.x_max, self.y_min, self.y_max)


class ObjectSpec(_Strict):
    max_speed: float = Field(
        default=10.0, ge=0, description="Initial velocity components ~ U(-max, max)"
    )
    placement_margin: float = Field(
        default=0.25,
        ge=0,
        lt=0.5,
        description="Fraction of the region kept free at each edge when placing objects",
    )
    initial_states: list[list[float]] | None = Field(
        default=None, description="Explicit X_0 rows [x¹, ẋ¹, x², ẋ²]"
    )
    fixed_truth: bool = Field(
        default=True,
        description="Share one ground truth across Monte Carlo runs (only scans "
        "and graphs vary)",
    )


class InitSpec(_Strict):
    """Track initialisation at n = 1: N(X_0 + perturbation, diag(variances))."""

    position_variance: float = Field(default=100.0, gt=0)
    velocity_variance: float = Field(default=25.0, gt=0)
    perturb: bool = Field(
        default=True, description="Draw the prior mean from the prior around X_0"
    )

    @property
    def variances(self) -> list[float]:
        return [
            self.position_variance,
            self.velocity_variance,
            self.position_variance,
            self.velocity_variance,
        ]


class MethodSpec(_Strict):
    """One results-table row: a tracker type with its configuration."""

    label: str
    type: str
    config: dict[str, Any] = Field(default_factory=dict)

    def tracker_config(self) -> TrackerConfig:
        schema = get_config_schema(self.type)
        if schema is None:
            raise ConfigurationError(f"Tracker type {self.type} not found in registry")
        return schema.model_validate(self.config)


class Scenario(_Strict):
    schema_version: int = SCHEMA_VERSION
    name: str
    description: str = ""
    num_objects: int = Field(ge=1)
    num_steps: int = Field(ge=1)
    num_sensors: int = Field(ge=1)
    runs: int = Field(default=1, ge=1, description="Monte Carlo runs")
    seed: int = Field(default=0, ge=0, description="Master seed")
    convergence_step: int = Field(
        default_factory=lambda: settings.CONVERGENCE_STEP,
        ge=1,
        description="Step whose per-iteration GOSPA is recorded",
    )
    dynamics: DynamicsSpec = Field(default_factory=DynamicsSpec)
    sensor: SensorSpec = Field(default_factory=SensorSpec)
    region: RegionSpec = Field(default_factory=RegionSpec)
    objects: ObjectSpec = Field(default_factory=ObjectSpec)
    init: InitSpec = Field(default_factory=InitSpec)
    network: NetworkPolicy = Field(default_factory=NetworkPolicy)
    sensor_positions: list[list[float]] | None = None
    methods: list[MethodSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check(self) -> Scenario:
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(
                f"unsupported schema_version {self.schema_version} "
                f"(expected {SCHEMA_VERSION})"
            )
        if self.region.x_min >= self.region.x_max or self.region.y_min >= self.region.y_max:
            raise ValueError("region bounds are empty")
        if self.objects.initial_states is not None and np.shape(
            self.objects.initial_states
        ) != (self.num_objects, 4):
            raise ValueError(f"initial_states must have shape ({self.num_objects}, 4)")
        if self.sensor_positions is not None and np.shape(self.sensor_positions) != (
            self.num_sensors,
            2,
        ):
            raise ValueError(f"sensor_positions must have shape ({self.num_sensors}, 2)")
        labels = [m.label for m in self.methods]
        if len(set(labels)) != len(labels):
            raise ValueError(f"method labels must be unique: {labels}")
        for method in self.methods:
            if method.type not in TRACKER_REGISTRY:
                raise ValueError(
                    f"unknown tracker type {method.type!r}; "
                    f"known: {sorted(TRACKER_REGISTRY)}"
                )
            method.tracker_config()
        return self

    def build_dynamics(self) -> DynamicsModel:
        return DynamicsModel.constant_velocity(
            self.num_objects, self.dynamics.tau, self.dynamics.q
        )

    def build_region(self) -> Region:
        return self.region.to_region()

    def build_sensors(self) -> list[SensorModel]:
        volume = self.build_region().volume
        return [
            SensorModel.isotropic(
                num_objects=self.num_objects,
                noise_variance=self.sensor.noise_variance,
                clutter_rate=self.sensor.clutter_rate,
                object_rate=self.sensor.object_rate,
                volume=volume,
                H=POSITION_H,
            )
            for _ in range(self.num_sensors)
        ]

    def select_methods(self, selection: list[str] | None) -> list[MethodSpec]:
        """Methods whose label or type is in `selection` (all when None)."""
        if selection is None:
            return list(self.methods)
        chosen = [m for m in self.methods if m.label in selection or m.type in selection]
        known = {m.label for m in self.methods} | {m.type for m in self.methods}
        unknown = [name for name in selection if name not in known]
        if unknown:
            raise ConfigurationError(f"scenario {self.name} has no method(s) {unknown}")
        return chosen

    def with_overrides(
        self,
        seed: int | None = None,
        iterations: int | None = None,
        alpha: float | None = None,
        variant: GradientVariant | str | None = None,
    ) -> Scenario:
        """
        Copy with CLI/environment overrides applied and re-validated.

        iterations sets max_iterations (the DNGD budget); alpha and variant set
        the step size and gradient form. Each applies to every method.
        """
        data = self.model_dump(mode="json")
        if seed is not None:
            data["seed"] = seed
        updates: dict[str, Any] = {}
        if iterations is not None:
            updates["max_iterations"] = iterations
        if alpha is not None:
            updates["alpha"] = alpha
        if variant is not None:
            updates["gradient_variant"] = str(GradientVariant(variant))
        for method in data["methods"]:
            method["config"].update(updates)
        return parse_scenario(data)

    def config_hash(self) -> str:
        """sha256 of the canonical JSON form."""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()


def parse_scenario(data: dict[str, Any]) -> Scenario:
    """
    Validate a scenario mapping.

    Raises:
        ConfigurationError: With every validation problem listed
    """
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"invalid scenario: {e}") from e


def load_scenario(path: Path) -> Scenario:
    """
    Load and validate a JSON scenario file.

    Raises:
        ReportError: If the file cannot be read or is not JSON
        ConfigurationError: If the contents are invalid
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ReportError(f"failed to read scenario ({e})", path) from e
    scenario = parse_scenario(data)
    logger.info(
        f"Loaded scenario {scenario.name}: K={scenario.num_objects}, "
        f"T={scenario.num_steps}, N_s={scenario.num_sensors}, runs={scenario.runs}"
    )
    return scenario
