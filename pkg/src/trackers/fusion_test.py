import logging

import numpy as np
import pytest

from src.graph.mixing import average_consensus
from src.model.belief import GaussianBelief
from src.sim.network import GraphSnapshot
from src.trackers.fusion import (
    aa_fuse,
    belief_from_payload,
    effective_prior_check,
    ga_prior,
    moment_payload,
)
from src.vi_core.natural import nat_from_moments


def belief(mean, variance):
    return GaussianBelief.diagonal(np.array([mean], dtype=float), [variance] * 4)


def describe_moment_payload():
    def it_moment_matches_back_to_the_same_belief():
        b = GaussianBelief(
            np.array([[1.0, 2.0, 3.0, 4.0]]),
            np.array([[[4.0, 1.0, 0, 0], [1.0, 3.0, 0, 0], [0, 0, 2.0, 0], [0, 0, 0, 1.0]]]),
        )
        back = belief_from_payload(moment_payload(b), 1, 4)
        np.testing.assert_allclose(back.mean, b.mean)
        np.testing.assert_allclose(back.cov, b.cov)


def describe_aa_fuse():
    def it_leaves_identical_beliefs_unchanged():
        b = belief([10.0, 1.0, -5.0, 0.0], 9.0)
        fused = aa_fuse([b, b, b], [GraphSnapshot.complete(3)], rounds=3)
        for f in fused:
            np.testing.assert_allclose(f.mean, b.mean)
            np.testing.assert_allclose(f.cov, b.cov)

    def it_matches_the_mixture_moments_on_a_complete_graph():
        a = belief([0.0, 0.0, 0.0, 0.0], 1.0)
        b = belief([2.0, 0.0, 0.0, 0.0], 1.0)
        (fused, _) = aa_fuse([a, b], [GraphSnapshot.complete(2)], rounds=1)
        np.testing.assert_allclose(fused.mean[0], [1.0, 0.0, 0.0, 0.0])
        # mixture variance: average variance plus the spread of the means
        assert fused.cov[0, 0, 0] == pytest.approx(2.0)
        assert fused.cov[0, 1, 1] == pytest.approx(1.0)

    def it_is_the_identity_for_zero_rounds():
        a = belief([0.0] * 4, 1.0)
        b = belief([5.0] * 4, 2.0)
        fused = aa_fuse([a, b], [GraphSnapshot.complete(2)], rounds=0)
        assert fused[0] is a
        assert fused[1] is b

    def it_reports_each_round():
        a = belief([0.0] * 4, 1.0)
        b = belief([5.0] * 4, 2.0)
        rounds = []
        aa_fuse(
            [a, b],
            [GraphSnapshot.complete(2)],
            rounds=3,
            on_round=lambda r, beliefs: rounds.append((r, len(beliefs))),
        )
        assert rounds == [(1, 2), (2, 2), (3, 2)]

    def it_logs_the_moment_disagreement(caplog):
        a = belief([0.0] * 4, 1.0)
        b = belief([5.0] * 4, 2.0)
        with caplog.at_level(logging.DEBUG, logger="src.trackers.fusion"):
            aa_fuse([a, b], [GraphSnapshot.path(2)], rounds=2)
        assert "AA fusion over 2 rounds: moment disagreement" in caplog.text

    def it_fuses_the_consensus_average_of_the_moments():
        beliefs = [belief([float(s), 0.0, -float(s), 1.0], 1.0 + s) for s in range(3)]
        snapshots = [GraphSnapshot.path(3)]
        fused = aa_fuse(beliefs, snapshots, rounds=5)
        expected = average_consensus(
            np.stack([moment_payload(b) for b in beliefs]), snapshots, rounds=5
        )
        for f, row in zip(fused, expected.values, strict=True):
            np.testing.assert_allclose(moment_payload(f), row)


def describe_ga_prior():
    def it_averages_precisions_and_weights_the_means():
        a = belief([0.0, 0.0, 0.0, 0.0], 1.0)
        b = belief([3.0, 0.0, 0.0, 0.0], 0.5)
        effective = effective_prior_check([nat_from_moments(a), nat_from_moments(b)])
        # precisions 1 and 2 average to 1.5; the mean is weighted 1:2
        np.testing.assert_allclose(effective.cov[0], np.eye(4) / 1.5)
        assert effective.mean[0, 0] == pytest.approx(2.0)

    def it_is_the_shared_prior_for_homogeneous_sensors():
        a = nat_from_moments(belief([1.0, 2.0, 3.0, 4.0], 7.0))
        fused = ga_prior([a, a, a, a])
        np.testing.assert_allclose(fused.lambda1, a.lambda1)
        np.testing.assert_allclose(fused.lambda2, a.lambda2)

    def it_needs_a_prior():
        with pytest.raises(ValueError):
            ga_prior([])
