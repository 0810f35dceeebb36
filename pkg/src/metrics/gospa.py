"""GOSPA scoring of position estimates with its localisation/missed/false split."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from src.shared.errors import ConfigurationError


@dataclass(frozen=True)
class GospaBreakdown:
    """GOSPA value and its parts.

    The parts are in cost units (distance^p), so for p = 1 they add up to
    `total`; in general total = (localisation + missed + false_)^(1/p).
    `assignment` lists the (truth index, estimate index) pairs closer than c.
    """

    total: float
    localisation: float
    missed: float
    false_: float
    assignment: list[tuple[int, int]] = field(default_factory=list)


def check_gospa_parameters(p: float, alpha: float, c: float) -> None:
    if p < 1:
        raise ConfigurationError(f"The order p is outside the range [1, inf): {p}")
    if not 0 < alpha <= 2:
        raise ConfigurationError(f"The value of alpha is outside the range (0, 2]: {alpha}")
    if c <= 0:
        raise ConfigurationError(f"The cutoff distance c is outside the range (0, inf): {c}")


def _as_points(points: np.ndarray | list) -> np.ndarray:
    return np.asarray(points, dtype=float).reshape(-1, 2)


def gospa(
    estimates: np.ndarray | list,
    truth: np.ndarray | list,
    p: float = 1.0,
    alpha: float = 2.0,
    c: float = 50.0,
) -> GospaBreakdown:
    """
    GOSPA between two sets of 2-D positions.

    Assigned pairs with distance < c cost distance^p; every unassigned truth
    or estimate costs c^p/alpha. Because alpha ≤ 2, pairing two points closer
    than c is never worse than leaving both unassigned, so the optimal partial
    assignment is a rectangular assignment on costs capped at 2c^p/alpha.

    Args:
        estimates: Estimated positions, shape (m, 2)
        truth: True positions, shape (n, 2)
        p: Order, ≥ 1
        alpha: Cardinality mismatch normalisation, in (0, 2]
        c: Cut-off distance, > 0

    Returns:
        GospaBreakdown

    Raises:
        ConfigurationError: If a parameter is out of range
    """
    check_gospa_parameters(p, alpha, c)
    estimates = _as_points(estimates)
    truth = _as_points(truth)
    n, m = truth.shape[0], estimates.shape[0]
    unassigned_cost = c**p / alpha

    assignment: list[tuple[int, int]] = []
    localisation = 0.0
    if n and m:
        distances = cdist(truth, estimates)
        costs = np.where(distances < c, distances**p, 2.0 * unassigned_cost)
        rows, cols = linear_sum_assignment(costs)
        for i, j in zip(rows, cols, strict=True):
            if distances[i, j] < c:
                assignment.append((int(i), int(j)))
                localisation += float(costs[i, j])

    num_assigned = len(assignment)
    missed = unassigned_cost * (n - num_assigned)
    false_ = unassigned_cost * (m - num_assigned)
    total = (localisation + missed + false_) ** (1.0 / p)
    return GospaBreakdown(total, localisation, missed, false_, assignment)
