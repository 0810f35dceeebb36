import numpy as np
import pytest
from scipy.stats import multivariate_normal

from src.model.belief import GaussianBelief
from src.model.sensor import (
    POSITION_H,
    Region,
    SensorModel,
    association_prior,
    measurement_loglik,
)
from src.shared.errors import ConfigurationError


@pytest.fixture
def sensor():
    return SensorModel.isotropic(
        num_objects=2, noise_variance=100.0, clutter_rate=8.0, object_rate=1.0, volume=4e6
    )


def describe_Region():
    def it_reports_volume_and_containment():
        region = Region(-10.0, 10.0, 0.0, 5.0)
        assert region.volume == 100.0
        np.testing.assert_array_equal(
            region.contains(np.array([[0.0, 1.0], [11.0, 1.0]])), [True, False]
        )

    def it_rejects_an_empty_rectangle():
        with pytest.raises(ConfigurationError):
            Region(0.0, 0.0, 0.0, 1.0)


def describe_SensorModel():
    def it_requires_one_rate_per_origin():
        with pytest.raises(ConfigurationError):
            SensorModel(POSITION_H, np.stack([np.eye(2)] * 2), 1.0, [1.0, 1.0])

    def it_rejects_non_pd_noise():
        with pytest.raises(ConfigurationError, match="object 1"):
            SensorModel(POSITION_H, np.zeros((1, 2, 2)), 1.0, [1.0, 1.0])

    def it_rejects_negative_rates():
        with pytest.raises(ConfigurationError):
            SensorModel(POSITION_H, np.eye(2)[None], 1.0, [-1.0, 1.0])


def describe_measurement_loglik():
    def it_gives_the_uniform_density_for_clutter(sensor):
        states = np.zeros((2, 4))
        assert measurement_loglik(np.array([3.0, 4.0]), 0, states, sensor) == pytest.approx(
            -np.log(4e6)
        )

    def it_matches_the_gaussian_density_for_point_states(sensor):
        states = np.array([[10.0, 0.0, -5.0, 0.0], [0.0, 0.0, 0.0, 0.0]])
        y = np.array([12.0, -1.0])
        expected = multivariate_normal.logpdf(y, mean=[10.0, -5.0], cov=100.0 * np.eye(2))
        assert measurement_loglik(y, 1, states, sensor) == pytest.approx(expected)

    def it_subtracts_the_spread_for_a_belief(sensor):
        mean = np.array([[10.0, 0.0, -5.0, 0.0], [0.0, 0.0, 0.0, 0.0]])
        belief = GaussianBelief.diagonal(mean, [50.0, 1.0, 30.0, 1.0])
        y = np.array([12.0, -1.0])
        point = measurement_loglik(y, 1, mean, sensor)
        assert measurement_loglik(y, 1, belief, sensor) == pytest.approx(
            point - 0.5 * (50.0 + 30.0) / 100.0
        )

    def it_rejects_an_unknown_origin(sensor):
        with pytest.raises(ConfigurationError):
            measurement_loglik(np.zeros(2), 3, np.zeros((2, 4)), sensor)

    def it_rejects_a_non_finite_measurement(sensor):
        with pytest.raises(ConfigurationError):
            measurement_loglik(np.array([np.nan, 0.0]), 1, np.zeros((2, 4)), sensor)


def describe_association_prior():
    def it_normalises_the_rates(sensor):
        np.testing.assert_allclose(association_prior(sensor), [0.8, 0.1, 0.1])

    def it_is_undefined_when_every_rate_is_zero():
        silent = SensorModel.isotropic(1, 1.0, 0.0, 0.0, 1.0)
        with pytest.raises(ConfigurationError):
            association_prior(silent)
