import numpy as np
import pytest

from src.metrics.aggregate import MeanStd, MethodRun, aggregate
from src.metrics.gospa import GospaBreakdown


def score(total: float) -> GospaBreakdown:
    return GospaBreakdown(total=total, localisation=total, missed=0.0, false_=0.0)


def method_run(totals, ci=None) -> MethodRun:
    return MethodRun(
        gospa=[[score(t) for t in step] for step in totals],
        ci_per_step=ci if ci is not None else [0] * len(totals),
    )


def describe_aggregate():
    def it_reports_the_single_value_for_one_sensor_step_and_run():
        summary = aggregate([method_run([[7.0]])])
        assert summary.mgospa == MeanStd(7.0, 0.0)
        assert summary.curve == [MeanStd(7.0, 0.0)]
        assert summary.runs == 1

    def it_averages_sensors_and_steps_then_runs():
        runs = [
            method_run([[1.0, 3.0], [5.0, 7.0]]),
            method_run([[2.0, 2.0], [2.0, 2.0]]),
        ]
        summary = aggregate(runs)
        assert summary.mgospa.mean == pytest.approx(3.0)
        assert summary.mgospa.std == pytest.approx(1.0)
        assert summary.localisation.mean == pytest.approx(3.0)
        assert summary.curve[0].mean == pytest.approx(2.0)
        assert summary.curve[1].mean == pytest.approx(4.0)

    def it_has_no_sensor_spread_for_identical_estimators():
        summary = aggregate([method_run([[4.0, 4.0, 4.0], [1.0, 1.0, 1.0]])])
        assert summary.sensor_spread == [0.0, 0.0]

    def it_averages_the_communication_per_step():
        summary = aggregate(
            [method_run([[1.0], [1.0]], [10, 20]), method_run([[1.0], [1.0]], [30, 30])]
        )
        assert summary.ci == pytest.approx(22.5)

    def it_needs_at_least_one_run():
        with pytest.raises(ValueError):
            aggregate([])

    def it_needs_matching_step_counts():
        with pytest.raises(ValueError):
            aggregate([method_run([[1.0]]), method_run([[1.0], [2.0]])])


def describe_MeanStd():
    def it_uses_the_population_std():
        stats = MeanStd.of([1.0, 3.0])
        assert stats.to_dict() == {"mean": 2.0, "std": 1.0}
        assert stats.std == pytest.approx(np.std([1.0, 3.0]))
