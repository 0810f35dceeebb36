"""MGOSPA, sub-metric and communication-iteration aggregation across Monte Carlo runs."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.metrics.gospa import GospaBreakdown


@dataclass(frozen=True)
class MeanStd:
    mean: float
    std: float

    @classmethod
    def of(cls, values: Sequence[float] | np.ndarray) -> MeanStd:
        values = np.asarray(values, dtype=float)
        return cls(float(np.mean(values)), float(np.std(values)))

    def to_dict(self) -> dict[str, float]:
        return {"mean": self.mean, "std": self.std}


@dataclass(frozen=True)
class MethodRun:
    """One method's scores in one Monte Carlo run.

    gospa[n][s] is sensor s's breakdown at step n+1; ci_per_step is the
    tracker's own counter.
    """

    gospa: list[list[GospaBreakdown]]
    ci_per_step: list[int]

    def totals(self) -> np.ndarray:
        """GOSPA totals, shape (T, sensors)."""
        return np.array([[g.total for g in step] for step in self.gospa], dtype=float)

    def part(self, name: str) -> np.ndarray:
        return np.array(
            [[getattr(g, name) for g in step] for step in self.gospa], dtype=float
        )


@dataclass(frozen=True)
class MethodSummary:
    """Results-table row plus the per-step curve for one method.

    Means are taken over sensors and steps within a run; std is the population
    std of those run means across runs. curve[n] pools sensors and runs at step
    n+1; sensor_spread[n] is the across-sensor std at step n+1, averaged over runs.
    """

    mgospa: MeanStd
    localisation: MeanStd
    missed: MeanStd
    false_: MeanStd
    ci: float
    runs: int
    curve: list[MeanStd]
    sensor_spread: list[float]


def aggregate(runs: Sequence[MethodRun]) -> MethodSummary:
    """
    Summarise one method over its Monte Carlo runs.

    Args:
        runs: Per-run scores, all with the same number of steps

    Returns:
        MethodSummary

    Raises:
        ValueError: If there are no runs, no steps, or the runs disagree on T
    """
    if not runs:
        raise ValueError("cannot aggregate an empty set of runs")
    num_steps = len(runs[0].gospa)
    if num_steps == 0 or any(len(r.gospa) != num_steps for r in runs):
        raise ValueError("every run needs the same, nonzero number of steps")

    totals = [r.totals() for r in runs]

    def run_means(name: str) -> list[float]:
        return [float(np.mean(r.part(name))) for r in runs]

    curve = [
        MeanStd.of(np.concatenate([t[n] for t in totals])) for n in range(num_steps)
    ]
    spread = [float(np.mean([np.std(t[n]) for t in totals])) for n in range(num_steps)]
    ci = float(np.mean([np.mean(r.ci_per_step) if r.ci_per_step else 0.0 for r in runs]))

    return MethodSummary(
        mgospa=MeanStd.of([float(np.mean(t)) for t in totals]),
        localisation=MeanStd.of(run_means("localisation")),
        missed=MeanStd.of(run_means("missed")),
        false_=MeanStd.of(run_means("false_")),
        ci=ci,
        runs=len(runs),
        curve=curve,
        sensor_spread=spread,
    )
