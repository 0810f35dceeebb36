"""Dynamical model, NHPP measurement model and association prior."""

from src.model.belief import GaussianBelief
from src.model.dynamics import DynamicsModel, predict_belief
from src.model.sensor import (
    POSITION_H,
    Region,
    SensorModel,
    association_prior,
    measurement_loglik,
)

__all__ = [
    "GaussianBelief",
    "DynamicsModel",
    "predict_belief",
    "POSITION_H",
    "Region",
    "SensorModel",
    "association_prior",
    "measurement_loglik",
]
