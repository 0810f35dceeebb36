import numpy as np
import pytest

from src.graph.mixing import (
    WeightCache,
    average_consensus,
    disagreement,
    metropolis_weights,
    mix,
    snapshot_for,
)
from src.sim.network import GraphSnapshot


@pytest.fixture
def star():
    adjacency = np.zeros((4, 4), dtype=bool)
    adjacency[0, 1:] = adjacency[1:, 0] = True
    return GraphSnapshot(1, adjacency)


def describe_metropolis_weights():
    def it_is_symmetric_and_doubly_stochastic(star):
        w = metropolis_weights(star).weights
        np.testing.assert_allclose(w, w.T)
        np.testing.assert_allclose(w.sum(axis=0), 1.0)
        np.testing.assert_allclose(w.sum(axis=1), 1.0)
        assert np.all(w >= 0)

    def it_uses_the_larger_degree_on_each_edge(star):
        w = metropolis_weights(star).weights
        assert w[0, 1] == pytest.approx(1.0 / 4.0)
        assert w[1, 1] == pytest.approx(3.0 / 4.0)
        assert w[0, 0] == pytest.approx(1.0 / 4.0)
        assert w[1, 2] == 0.0

    def it_weights_a_three_sensor_path():
        w = metropolis_weights(GraphSnapshot.path(3, 1)).weights
        third = 1.0 / 3.0
        np.testing.assert_allclose(
            w,
            [
                [2 * third, third, 0.0],
                [third, third, third],
                [0.0, third, 2 * third],
            ],
        )

    def it_averages_in_one_round_on_a_complete_graph():
        w = metropolis_weights(GraphSnapshot.complete(5)).weights
        np.testing.assert_allclose(w, np.full((5, 5), 0.2))

    def it_keeps_a_lone_sensor_unchanged():
        w = metropolis_weights(GraphSnapshot.complete(1)).weights
        np.testing.assert_array_equal(w, [[1.0]])


def describe_WeightCache():
    def it_reuses_weights_for_the_same_adjacency(star):
        cache = WeightCache()
        assert cache.get(star) is cache.get(GraphSnapshot(1, star.adjacency.copy()))

    def it_rebuilds_when_the_graph_changes(star):
        cache = WeightCache()
        first = cache.get(star)
        assert cache.get(GraphSnapshot.path(4, 1)) is not first


def describe_mix():
    def it_preserves_the_network_sum(star):
        values = np.random.default_rng(0).normal(size=(4, 3))
        mixed = mix(values, metropolis_weights(star))
        np.testing.assert_allclose(mixed.sum(axis=0), values.sum(axis=0))

    def it_rejects_a_payload_with_the_wrong_number_of_rows(star):
        with pytest.raises(ValueError):
            mix(np.zeros((3, 2)), metropolis_weights(star))


def describe_average_consensus():
    def it_converges_to_the_average_on_a_connected_graph():
        values = np.random.default_rng(1).normal(size=(6, 2))
        result = average_consensus(values, [GraphSnapshot.path(6)], rounds=400)
        np.testing.assert_allclose(
            result.values, np.broadcast_to(values.mean(axis=0), (6, 2)), atol=1e-6
        )

    def it_shrinks_the_disagreement():
        values = np.random.default_rng(2).normal(size=(6, 2))
        result = average_consensus(values, [GraphSnapshot.path(6)], rounds=30)
        assert len(result.disagreement) == 31
        assert result.disagreement[-1] < result.disagreement[0]

    def it_reports_each_round_to_the_caller():
        values = np.random.default_rng(3).normal(size=(3, 2))
        seen = []
        result = average_consensus(
            values,
            [GraphSnapshot.path(3)],
            rounds=4,
            on_round=lambda r, current: seen.append((r, disagreement(current))),
        )
        assert [r for r, _ in seen] == [1, 2, 3, 4]
        assert [d for _, d in seen] == result.disagreement[1:]

    def it_returns_the_input_for_zero_rounds():
        values = np.arange(6.0).reshape(3, 2)
        result = average_consensus(values, [GraphSnapshot.complete(3)], rounds=0)
        np.testing.assert_array_equal(result.values, values)

    def it_rejects_negative_rounds():
        with pytest.raises(ValueError):
            average_consensus(np.zeros((2, 1)), [GraphSnapshot.complete(2)], rounds=-1)

    def it_uses_one_snapshot_per_round_and_repeats_the_last():
        snapshots = [GraphSnapshot.complete(3, 1), GraphSnapshot.path(3, 1)]
        assert snapshot_for(snapshots, 0) is snapshots[0]
        assert snapshot_for(snapshots, 7) is snapshots[1]


def describe_disagreement():
    def it_is_zero_at_consensus():
        assert disagreement(np.ones((4, 3))) == 0.0

    def it_is_the_largest_distance_to_the_mean():
        assert disagreement(np.array([[0.0], [2.0]])) == pytest.approx(1.0)
