import numpy as np
import pytest
from scipy.special import softmax

from src.model.belief import GaussianBelief
from src.sim.scans import Scan
from src.vi_core.association import AssociationPosterior, association_posterior
from src.vi_core.cavi import cavi_state_update
from src.vi_core.elbo import fixed_form_elbo, gaussian_kl, lm_elbo, lm_elbo_local
from src.vi_core.natural import moments_from_nat, nat_from_moments


def random_rows(rng, posterior: AssociationPosterior) -> AssociationPosterior:
    probs = rng.dirichlet(np.ones(posterior.probs.shape[1]), size=posterior.probs.shape[0])
    return AssociationPosterior(posterior.sensor_id, probs)


def describe_gaussian_kl():
    def it_is_zero_for_identical_beliefs():
        b = GaussianBelief.diagonal(np.ones((2, 4)), [3.0] * 4)
        assert gaussian_kl(b, b) == pytest.approx(0.0, abs=1e-12)

    def it_matches_the_scalar_formula_per_dimension():
        q = GaussianBelief.diagonal(np.zeros((1, 4)), [1.0] * 4)
        p = GaussianBelief.diagonal(np.ones((1, 4)), [2.0] * 4)
        per_dim = 0.5 * (1.0 / 2.0 + 1.0 / 2.0 - 1.0 + np.log(2.0))
        assert gaussian_kl(q, p) == pytest.approx(4 * per_dim)


def describe_lm_elbo():
    def it_bounds_every_fixed_form_value(problem):
        rng = np.random.default_rng(0)
        lam = problem.eta
        best = lm_elbo(lam, problem.eta, problem.scans, problem.sensors).total
        optimal = [
            association_posterior(lam, scan, sensor)
            for scan, sensor in zip(problem.scans, problem.sensors, strict=True)
        ]
        for _ in range(20):
            rho = [random_rows(rng, q) for q in optimal]
            value = fixed_form_elbo(lam, rho, problem.eta, problem.scans, problem.sensors)
            assert value.total <= best + 1e-9

    def it_equals_the_fixed_form_at_the_optimal_associations(problem):
        lam = problem.eta
        optimal = [
            association_posterior(lam, scan, sensor)
            for scan, sensor in zip(problem.scans, problem.sensors, strict=True)
        ]
        fixed = fixed_form_elbo(lam, optimal, problem.eta, problem.scans, problem.sensors)
        assert fixed.total == pytest.approx(
            lm_elbo(lam, problem.eta, problem.scans, problem.sensors).total
        )

    def it_has_no_state_penalty_at_the_prior(problem):
        value = lm_elbo(problem.eta, problem.eta, problem.scans, problem.sensors)
        assert value.state == pytest.approx(0.0, abs=1e-9)

    def it_splits_into_local_bounds(problem):
        n = len(problem.sensors)
        total = lm_elbo(problem.eta, problem.eta, problem.scans, problem.sensors).total
        local = sum(
            lm_elbo_local(problem.eta, problem.eta, scan, sensor, n).total
            for scan, sensor in zip(problem.scans, problem.sensors, strict=True)
        )
        assert local == pytest.approx(total)


def describe_fixed_form_elbo():
    def it_rejects_rows_that_do_not_sum_to_one(problem):
        rho = [
            association_posterior(problem.eta, scan, sensor)
            for scan, sensor in zip(problem.scans, problem.sensors, strict=True)
        ]
        broken = rho[0].probs.copy()
        broken[0, 0] += 0.1
        rho[0] = AssociationPosterior(rho[0].sensor_id, broken)
        with pytest.raises(ValueError, match="not normalised"):
            fixed_form_elbo(problem.eta, rho, problem.eta, problem.scans, problem.sensors)

    def it_rejects_a_row_count_mismatch(problem):
        rho = [
            AssociationPosterior(s, np.zeros((0, problem.sensors[s].num_objects + 1)))
            for s in range(len(problem.sensors))
        ]
        with pytest.raises(ValueError, match="rows"):
            fixed_form_elbo(problem.eta, rho, problem.eta, problem.scans, problem.sensors)

    def it_penalises_moving_away_from_the_prior_without_data(problem):
        empty = [
            AssociationPosterior(s, np.zeros((0, problem.sensors[s].num_objects + 1)))
            for s in range(len(problem.sensors))
        ]
        scans = [
            Scan(scan.sensor_id, scan.time_step, np.zeros((0, 2)))
            for scan in problem.scans
        ]
        shifted = nat_from_moments(
            GaussianBelief(problem.predicted.mean + 5.0, problem.predicted.cov)
        )
        at_prior = fixed_form_elbo(problem.eta, empty, problem.eta, scans, problem.sensors)
        moved = fixed_form_elbo(shifted, empty, problem.eta, scans, problem.sensors)
        assert moved.total < at_prior.total


MEAN_STEP = 1e-2
COV_STEP = 1e-2
LOGIT_STEP = 1e-4


def central(value, point, step):
    return (value(point + step) - value(point - step)) / (2 * np.abs(step).max())


def state_gradient(belief, rho, problem):
    """∂𝓕/∂μ and ∂𝓕/∂Σ (upper triangle) by central differences."""

    def elbo(mean, cov):
        lam = nat_from_moments(GaussianBelief(mean, cov))
        return fixed_form_elbo(lam, rho, problem.eta, problem.scans, problem.sensors).total

    mean, cov = belief.mean, belief.cov
    grads = []
    for k, i in np.ndindex(*mean.shape):
        step = np.zeros_like(mean)
        step[k, i] = MEAN_STEP
        grads.append(central(lambda m: elbo(m, cov), mean, step))
    for k, i, j in np.ndindex(*cov.shape):
        if j < i:
            continue
        step = np.zeros_like(cov)
        step[k, i, j] = step[k, j, i] = COV_STEP
        grads.append(central(lambda c: elbo(mean, c), cov, step))
    return np.array(grads)


def logit_gradient(lam, rho, problem):
    """∂𝓕 over the logits of every nonzero association weight."""

    def elbo(sensor, logits):
        moved = list(rho)
        moved[sensor] = AssociationPosterior(
            rho[sensor].sensor_id, softmax(logits, axis=1)
        )
        return fixed_form_elbo(lam, moved, problem.eta, problem.scans, problem.sensors).total

    grads = []
    for s, q in enumerate(rho):
        with np.errstate(divide="ignore"):
            logits = np.log(q.probs)
        for j, k in zip(*np.nonzero(np.isfinite(logits)), strict=True):
            step = np.zeros_like(logits)
            step[j, k] = LOGIT_STEP
            grads.append(central(lambda z, s=s: elbo(s, z), logits, step))
    return np.array(grads)


def describe_fixed_point_alignment():
    def it_is_stationary_in_both_factors_at_the_cavi_fixed_point(problem):
        def optimal(lam):
            return [
                association_posterior(lam, scan, sensor)
                for scan, sensor in zip(problem.scans, problem.sensors, strict=True)
            ]

        lam = problem.eta
        for _ in range(300):
            lam = cavi_state_update(
                problem.eta, problem.scans, problem.sensors, optimal(lam)
            )
        rho = optimal(lam)

        scale = np.linalg.norm(
            state_gradient(moments_from_nat(problem.eta), optimal(problem.eta), problem)
        )
        assert scale > 0

        belief = moments_from_nat(lam)
        assert np.linalg.norm(state_gradient(belief, rho, problem)) <= 1e-4 * scale
        assert np.linalg.norm(logit_gradient(lam, rho, problem)) <= 1e-4 * scale
