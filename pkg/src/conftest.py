"""Shared fixtures: small models, scans and scenarios."""

from types import SimpleNamespace
from typing import Any

import numpy as np
import pytest

from src.harness.scenario import Scenario, parse_scenario
from src.model.belief import GaussianBelief
from src.model.dynamics import DynamicsModel, predict_belief
from src.model.sensor import Region, SensorModel
from src.sim.scans import simulate_scan, strip_truth
from src.vi_core.natural import nat_from_moments

REGION = Region(-1000.0, 1000.0, -1000.0, 1000.0)


def make_sensors(
    num_sensors: int,
    num_objects: int,
    clutter_rate: float = 10.0,
    noise_variance: float = 100.0,
) -> list[SensorModel]:
    return [
        SensorModel.isotropic(
            num_objects=num_objects,
            noise_variance=noise_variance,
            clutter_rate=clutter_rate,
            object_rate=1.0,
            volume=REGION.volume,
        )
        for _ in range(num_sensors)
    ]


def make_problem(
    num_sensors: int = 3,
    num_objects: int = 3,
    clutter_rate: float = 10.0,
    seed: int = 7,
) -> SimpleNamespace:
    """One time step: predicted prior η, per-sensor models and scans."""
    rng = np.random.default_rng(seed)
    truth = np.column_stack(
        [
            rng.uniform(-500, 500, num_objects),
            rng.uniform(-5, 5, num_objects),
            rng.uniform(-500, 500, num_objects),
            rng.uniform(-5, 5, num_objects),
        ]
    )
    previous = GaussianBelief.diagonal(
        truth + rng.normal(size=truth.shape) * np.array([10.0, 5.0, 10.0, 5.0]),
        [100.0, 25.0, 100.0, 25.0],
    )
    dynamics = DynamicsModel.constant_velocity(num_objects)
    predicted = predict_belief(previous, dynamics)
    sensors = make_sensors(num_sensors, num_objects, clutter_rate)
    scans = [
        strip_truth(scan) for scan in simulate_scan(truth, sensors, REGION, seed, time_step=1)
    ]
    return SimpleNamespace(
        truth=truth,
        previous=previous,
        dynamics=dynamics,
        predicted=predicted,
        eta=nat_from_moments(predicted),
        sensors=sensors,
        scans=scans,
        region=REGION,
    )


@pytest.fixture
def problem() -> SimpleNamespace:
    return make_problem()


@pytest.fixture
def single_sensor_problem() -> SimpleNamespace:
    return make_problem(num_sensors=1, num_objects=4, clutter_rate=20.0, seed=11)


def scenario_data(**overrides: Any) -> dict[str, Any]:
    data: dict[str, Any] = {
        "schema_version": 1,
        "name": "tiny",
        "num_objects": 3,
        "num_steps": 4,
        "num_sensors": 3,
        "runs": 2,
        "seed": 5,
        "convergence_step": 2,
        "sensor": {"noise_variance": 100.0, "clutter_rate": 10.0, "object_rate": 1.0},
        "network": {"kind": "geometric", "radius": 1500.0, "dropout": 0.2},
        "sensor_positions": [[-500.0, 0.0], [0.0, 0.0], [500.0, 0.0]],
        "methods": [
            {"label": "C-VT", "type": "c_vt", "config": {"vi_iterations": 5}},
            {"label": "I-VT", "type": "i_vt", "config": {"vi_iterations": 5}},
            {
                "label": "DeC-VT",
                "type": "dec_vt",
                "config": {"vi_iterations": 5, "consensus_rounds": 5},
            },
            {
                "label": "DeAA-VT",
                "type": "deaa_vt",
                "config": {"vi_iterations": 5, "consensus_rounds": 5},
            },
            {"label": "DeNG-VT", "type": "deng_vt", "config": {"max_iterations": 10}},
        ],
    }
    data.update(overrides)
    return data


@pytest.fixture
def tiny_scenario() -> Scenario:
    return parse_scenario(scenario_data())
