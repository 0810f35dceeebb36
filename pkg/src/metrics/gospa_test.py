from itertools import permutations

import numpy as np
import pytest

from src.metrics.gospa import gospa
from src.shared.errors import ConfigurationError


def brute_force_gospa(estimates, truth, p, alpha, c):
    """Exhaustive minimum over every partial assignment."""
    n, m = len(truth), len(estimates)
    best = np.inf
    if n <= m:
        candidates = (list(enumerate(perm)) for perm in permutations(range(m), n))
    else:
        candidates = (
            [(i, j) for j, i in enumerate(perm)] for perm in permutations(range(n), m)
        )
    for pairs in candidates:
        cost = 0.0
        assigned = 0
        for i, j in pairs:
            d = np.linalg.norm(np.asarray(truth[i]) - np.asarray(estimates[j]))
            if d < c:
                cost += d**p
                assigned += 1
        cost += c**p / alpha * (n + m - 2 * assigned)
        best = min(best, cost)
    if n == 0 or m == 0:
        best = c**p / alpha * (n + m)
    return best ** (1.0 / p)


def describe_gospa():
    def it_is_zero_for_identical_sets():
        points = np.array([[0.0, 0.0], [10.0, 5.0]])
        assert gospa(points, points).total == pytest.approx(0.0)

    def it_charges_half_the_cutoff_for_a_missed_object():
        result = gospa(np.zeros((0, 2)), np.array([[0.0, 0.0]]))
        assert result.total == pytest.approx(25.0)
        assert result.missed == pytest.approx(25.0)
        assert result.false_ == 0.0

    def it_charges_the_distance_for_a_close_pair():
        result = gospa(np.array([[6.0, 8.0]]), np.array([[0.0, 0.0]]))
        assert result.total == pytest.approx(10.0)
        assert result.localisation == pytest.approx(10.0)
        assert result.assignment == [(0, 0)]

    def it_splits_a_distant_pair_into_missed_and_false():
        result = gospa(np.array([[100.0, 0.0]]), np.array([[0.0, 0.0]]))
        assert result.total == pytest.approx(50.0)
        assert result.missed == pytest.approx(25.0)
        assert result.false_ == pytest.approx(25.0)
        assert result.assignment == []

    def it_is_zero_for_two_empty_sets():
        assert gospa([], []).total == 0.0

    def it_is_symmetric():
        rng = np.random.default_rng(0)
        a = rng.uniform(0, 100, (4, 2))
        b = rng.uniform(0, 100, (6, 2))
        assert gospa(a, b).total == pytest.approx(gospa(b, a).total)

    def it_agrees_with_exhaustive_search():
        rng = np.random.default_rng(1)
        for _ in range(200):
            n, m = rng.integers(0, 5, size=2)
            truth = rng.uniform(0, 120, (n, 2))
            estimates = rng.uniform(0, 120, (m, 2))
            p = float(rng.choice([1.0, 2.0]))
            alpha = float(rng.choice([1.0, 2.0]))
            c = float(rng.uniform(10, 80))
            expected = brute_force_gospa(estimates, truth, p, alpha, c)
            assert gospa(estimates, truth, p, alpha, c).total == pytest.approx(expected)

    def it_raises_the_total_to_the_power_one_over_p():
        result = gospa(np.array([[3.0, 4.0]]), np.array([[0.0, 0.0]]), p=2.0)
        assert result.localisation == pytest.approx(25.0)
        assert result.total == pytest.approx(5.0)

    @pytest.mark.parametrize(
        ("p", "alpha", "c"), [(0.5, 2.0, 50.0), (1.0, 3.0, 50.0), (1.0, 2.0, 0.0)]
    )
    def it_rejects_parameters_out_of_range(p, alpha, c):
        with pytest.raises(ConfigurationError):
            gospa([[0.0, 0.0]], [[0.0, 0.0]], p, alpha, c)
