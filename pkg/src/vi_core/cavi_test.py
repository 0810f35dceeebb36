import numpy as np
import pytest

from src.conftest import make_sensors
from src.sim.scans import Scan
from src.vi_core.association import AssociationPosterior, association_posterior
from src.vi_core.cavi import cavi_state_update
from src.vi_core.elbo import lm_elbo
from src.vi_core.natural import moments_from_nat


def describe_cavi_state_update():
    def it_returns_the_prior_without_measurements(problem):
        scans = [Scan(s, 1, np.zeros((0, 2))) for s in range(len(problem.sensors))]
        assoc = [AssociationPosterior(s, np.zeros((0, 4))) for s in range(len(scans))]
        lam = cavi_state_update(problem.eta, scans, problem.sensors, assoc)
        np.testing.assert_array_equal(lam.lambda1, problem.eta.lambda1)
        np.testing.assert_array_equal(lam.lambda2, problem.eta.lambda2)

    def it_keeps_the_precision_negative_definite(problem):
        assoc = [
            association_posterior(problem.eta, scan, sensor)
            for scan, sensor in zip(problem.scans, problem.sensors, strict=True)
        ]
        cavi_state_update(problem.eta, problem.scans, problem.sensors, assoc).validate()

    def it_never_lowers_the_lm_elbo(problem):
        lam = problem.eta
        values = []
        for _ in range(15):
            values.append(lm_elbo(lam, problem.eta, problem.scans, problem.sensors).total)
            assoc = [
                association_posterior(lam, scan, sensor)
                for scan, sensor in zip(problem.scans, problem.sensors, strict=True)
            ]
            lam = cavi_state_update(problem.eta, problem.scans, problem.sensors, assoc)
        assert all(b >= a - 1e-8 for a, b in zip(values, values[1:], strict=False))

    def it_pulls_the_mean_towards_an_assigned_measurement(problem):
        sensor = make_sensors(1, problem.eta.num_objects, clutter_rate=0.0)[0]
        y = problem.predicted.mean[0, [0, 2]] + np.array([30.0, -20.0])
        scan = Scan(0, 1, y[None, :])
        assoc = [association_posterior(problem.eta, scan, sensor)]
        lam = cavi_state_update(problem.eta, [scan], [sensor], assoc)

        before = np.linalg.norm(problem.predicted.mean[0, [0, 2]] - y)
        after = np.linalg.norm(moments_from_nat(lam).mean[0, [0, 2]] - y)
        assert after < before

    def it_rejects_mismatched_inputs(problem):
        with pytest.raises(ValueError):
            cavi_state_update(problem.eta, problem.scans, problem.sensors[:1], [])
