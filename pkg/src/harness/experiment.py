"""Monte Carlo experiment orchestration: simulate, track, score, aggregate."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from pathlib import Path
from typing import Any

import numpy as np

from src import __version__
from src.graph.mixing import disagreement
from src.harness.run_logger import RunLogger, RunLogHandler
from src.harness.scenario import MethodSpec, Scenario
from src.metrics.aggregate import MethodRun, MethodSummary, aggregate
from src.metrics.gospa import GospaBreakdown, gospa
from src.model.belief import GaussianBelief
from src.model.sensor import Region, SensorModel
from src.shared.config import settings
from src.shared.errors import NumericalError, TrackerDivergedError
from src.sim.bundle import ScenarioBundle
from src.sim.network import generate_iteration_snapshots, generate_network, place_sensors
from src.sim.scans import Scan, simulate_scan, strip_truth
from src.sim.streams import Stream, stream_rng
from src.sim.truth import place_objects, simulate_truth
from src.trackers.base_tracker import BaseTracker, IterationRecord
from src.trackers.registry import get_tracker_class
from src.vi_core.elbo import lm_elbo
from src.vi_core.natural import moments_from_nat, stack_flat

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GospaParams:
    p: float = 1.0
    alpha: float = 2.0
    c: float = 50.0

    @classmethod
    def from_settings(cls) -> GospaParams:
        return cls(settings.GOSPA_P, settings.GOSPA_ALPHA, settings.GOSPA_C)

    def score(self, estimates: np.ndarray, truth: np.ndarray) -> GospaBreakdown:
        return gospa(estimates, truth, self.p, self.alpha, self.c)


@dataclass(frozen=True)
class ConvergenceRow:
    method: str
    iteration: int
    sensor: int
    gospa: float


@dataclass
class MethodOutcome:
    """One method on one run: scores and estimates, or the failure that stopped it.

    estimates[n][s] holds estimator s's (K, 2) positions at step n+1.
    """

    label: str
    type: str
    result: MethodRun | None
    estimates: list[list[np.ndarray]] = field(default_factory=list)
    convergence: list[ConvergenceRow] = field(default_factory=list)
    failure: dict[str, Any] | None = None


@dataclass
class RunOutcome:
    run: int
    methods: list[MethodOutcome]


@dataclass
class MethodResult:
    label: str
    type: str
    summary: MethodSummary | None
    failures: int


@dataclass
class RunReport:
    """Everything the report files are written from."""

    scenario: Scenario
    methods: list[MethodResult]
    convergence: list[ConvergenceRow]
    failures: list[dict[str, Any]]
    provenance: dict[str, Any]


def object_initial_states(scenario: Scenario, run: int) -> np.ndarray:
    """X_0: explicit rows from the scenario or a seeded placement."""
    if scenario.objects.initial_states is not None:
        return np.asarray(scenario.objects.initial_states, dtype=float)
    region = scenario.build_region()
    margin = scenario.objects.placement_margin
    dx = margin * (region.x_max - region.x_min)
    dy = margin * (region.y_max - region.y_min)
    inner = Region(region.x_min + dx, region.x_max - dx, region.y_min + dy, region.y_max - dy)
    truth_run = 0 if scenario.objects.fixed_truth else run
    return place_objects(
        scenario.num_objects, inner, scenario.objects.max_speed, scenario.seed, truth_run
    )


def track_prior(scenario: Scenario, initial_states: np.ndarray, run: int) -> GaussianBelief:
    """
    Belief at n = 0 shared by every tracker and sensor.

    Centred on X_0, optionally displaced by one draw from the prior covariance.
    """
    variances = np.asarray(scenario.init.variances)
    mean = np.array(initial_states, dtype=float)
    if scenario.init.perturb:
        rng = stream_rng(scenario.seed, Stream.TRACK_INIT, run)
        mean = mean + rng.normal(size=mean.shape) * np.sqrt(variances)
    return GaussianBelief.diagonal(mean, variances)


def build_tracker(
    method: MethodSpec, scenario: Scenario, sensors: Sequence[SensorModel] | None = None
) -> BaseTracker:
    tracker_class = get_tracker_class(method.type)
    if tracker_class is None:
        raise ValueError(f"Tracker type {method.type} not found in registry")
    return tracker_class(
        method.tracker_config(),
        scenario.build_dynamics(),
        sensors if sensors is not None else scenario.build_sensors(),
    )


def communication_budget(scenario: Scenario, methods: Sequence[MethodSpec]) -> int:
    """Largest per-step exchange count among the methods (at least 1)."""
    return max([1, *(build_tracker(m, scenario).communication_rounds for m in methods)])


def simulate_run(scenario: Scenario, run: int, iterations: int = 1) -> ScenarioBundle:
    """
    Simulate ground truth, scans and graphs for one Monte Carlo run.

    Args:
        scenario: Validated scenario
        run: Monte Carlo run index
        iterations: Snapshots per step when the policy resamples per iteration

    Returns:
        ScenarioBundle with scans that still carry their origins
    """
    seed = scenario.seed
    region = scenario.build_region()
    sensors = scenario.build_sensors()
    truth_run = 0 if scenario.objects.fixed_truth else run
    truth = simulate_truth(
        object_initial_states(scenario, run),
        scenario.build_dynamics(),
        scenario.num_steps,
        seed,
        truth_run,
    )
    if scenario.sensor_positions is not None:
        positions = np.asarray(scenario.sensor_positions, dtype=float)
    else:
        positions = place_sensors(scenario.num_sensors, region, seed)

    scans = [
        simulate_scan(truth.states[n], sensors, region, seed, run, n + 1)
        for n in range(scenario.num_steps)
    ]
    if scenario.network.resample_per_iteration:
        network = [
            generate_iteration_snapshots(
                positions, scenario.network, n, iterations, seed, run
            )
            for n in range(1, scenario.num_steps + 1)
        ]
    else:
        network = [
            [snapshot]
            for snapshot in generate_network(
                positions, scenario.network, scenario.num_steps, seed, run
            )
        ]
    return ScenarioBundle(truth=truth, scans=scans, network=network, sensor_positions=positions)


class ConvergenceRecorder:
    """Observer scoring every inner iteration of one time step against the truth."""

    def __init__(
        self,
        label: str,
        truth: np.ndarray,
        scans: Sequence[Scan],
        sensors: Sequence[SensorModel],
        params: GospaParams,
        run_logger: RunLogger | None = None,
    ) -> None:
        self.label = label
        self.truth = truth
        self.scans = list(scans)
        self.sensors = list(sensors)
        self.params = params
        self.run_logger = run_logger
        self.rows: list[ConvergenceRow] = []

    def __call__(self, record: IterationRecord) -> None:
        H = self.sensors[0].H
        scores = [
            self.params.score(moments_from_nat(lam).positions(H), self.truth).total
            for lam in record.lambdas
        ]
        self.rows.extend(
            ConvergenceRow(self.label, record.iteration, s, score)
            for s, score in enumerate(scores)
        )
        if self.run_logger is None:
            return
        values: dict[str, Any] = {
            "gospa": scores,
            "disagreement": disagreement(stack_flat(record.lambdas)),
        }
        if record.etas is not None:
            values["elbo"] = [
                lm_elbo(lam, eta, self.scans, self.sensors).total
                for lam, eta in zip(record.lambdas, record.etas, strict=True)
            ]
        self.run_logger.iteration(self.label, record.time_step, record.iteration, **values)


def run_method(
    method: MethodSpec,
    scenario: Scenario,
    bundle: ScenarioBundle,
    prior: GaussianBelief,
    run: int = 0,
    params: GospaParams | None = None,
    run_logger: RunLogger | None = None,
    record_convergence: bool = False,
) -> MethodOutcome:
    """
    Run one tracker over every step of a bundle and score each estimator.

    Divergence and numerical failures are caught and recorded, not raised.
    """
    params = params or GospaParams.from_settings()
    sensors = scenario.build_sensors()
    tracker = build_tracker(method, scenario, sensors)
    state = tracker.initial_state(prior)
    outcome = MethodOutcome(label=method.label, type=method.type, result=None)
    scores: list[list[GospaBreakdown]] = []

    try:
        for n in range(bundle.num_steps):
            time_step = n + 1
            truth = bundle.truth.positions(time_step)
            scans = [strip_truth(scan) for scan in bundle.scans[n]]
            recorder = None
            if record_convergence and time_step == scenario.convergence_step:
                recorder = ConvergenceRecorder(
                    method.label, truth, scans, sensors, params, run_logger
                )
            state = tracker.step(state, scans, bundle.network[n], recorder)
            estimates = tracker.estimates(state)
            outcome.estimates.append(estimates)
            scores.append([params.score(est, truth) for est in estimates])
            if recorder:
                outcome.convergence = recorder.rows
    except (TrackerDivergedError, NumericalError) as e:
        logger.exception(f"Method {method.label} failed in run {run}")
        if run_logger:
            run_logger.exception(f"Method {method.label} failed", e)
        outcome.failure = {
            "run": run,
            "method": method.label,
            "error_type": type(e).__name__,
            "message": str(e),
        }
        return outcome

    outcome.result = MethodRun(gospa=scores, ci_per_step=list(state.ci_per_step))
    return outcome


def execute_run(
    scenario: Scenario,
    methods: Sequence[MethodSpec],
    run: int,
    output_dir: Path | None = None,
) -> RunOutcome:
    """Simulate one Monte Carlo run and feed the identical data to every method."""
    run_logger = RunLogger(scenario.name, run, output_dir) if output_dir else None
    log_handler = RunLogHandler(run_logger) if run_logger else None
    root_logger = logging.getLogger()
    if log_handler:
        log_handler.setLevel(logging.INFO)
        root_logger.addHandler(log_handler)

    try:
        logger.info(f"Run {run}: simulating {scenario.name}")
        bundle = simulate_run(scenario, run, communication_budget(scenario, methods))
        prior = track_prior(scenario, bundle.truth.initial, run)
        params = GospaParams.from_settings()
        outcomes = []
        for method in methods:
            outcome = run_method(
                method,
                scenario,
                bundle,
                prior,
                run,
                params,
                run_logger,
                record_convergence=run == 0,
            )
            if outcome.result is not None:
                logger.info(
                    f"Run {run}: {method.label} MGOSPA "
                    f"{float(np.mean(outcome.result.totals())):.2f}"
                )
            outcomes.append(outcome)
    finally:
        if log_handler:
            root_logger.removeHandler(log_handler)

    if run_logger:
        failures = sum(o.failure is not None for o in outcomes)
        log_file = run_logger.save(success=failures == 0, failures=failures)
        logger.info(f"Run log saved to {log_file}")
    return RunOutcome(run=run, methods=outcomes)


def summarise(
    scenario: Scenario, methods: Sequence[MethodSpec], outcomes: Sequence[RunOutcome]
) -> RunReport:
    """Aggregate per-run outcomes into a report, in method then run order."""
    ordered = sorted(outcomes, key=lambda o: o.run)
    results = []
    failures: list[dict[str, Any]] = []
    convergence: list[ConvergenceRow] = []
    for m, method in enumerate(methods):
        per_run = [o.methods[m] for o in ordered]
        completed = [r.result for r in per_run if r.result is not None]
        failed = [r.failure for r in per_run if r.failure is not None]
        failures.extend(failed)
        if ordered and ordered[0].run == 0:
            convergence.extend(per_run[0].convergence)
        results.append(
            MethodResult(
                label=method.label,
                type=method.type,
                summary=aggregate(completed) if completed else None,
                failures=len(failed),
            )
        )
    provenance = {
        "scenario": scenario.name,
        "seed": scenario.seed,
        "config_hash": scenario.config_hash(),
        "code_version": __version__,
        "runs": scenario.runs,
    }
    return RunReport(scenario, results, convergence, failures, provenance)


def run_experiment(
    scenario: Scenario,
    methods: list[str] | None = None,
    output_dir: Path | None = None,
    workers: int | None = None,
) -> RunReport:
    """
    Run every selected method on every Monte Carlo run and aggregate.

    Runs are independent and go to a process pool when workers > 1; results
    are re-ordered by run index, so the report does not depend on scheduling.

    Args:
        scenario: Validated scenario (seed already resolved)
        methods: Labels or types to run (all when None)
        output_dir: Where run logs go (none written when None)
        workers: Pool size (settings.WORKERS when None)

    Returns:
        RunReport
    """
    selected = scenario.select_methods(methods)
    workers = workers or settings.WORKERS
    runs = range(scenario.runs)
    logger.info(
        f"🚀 Running {scenario.name}: {len(selected)} method(s) x {scenario.runs} run(s), "
        f"{workers} worker(s)"
    )

    if workers > 1 and scenario.runs > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(
                pool.map(
                    execute_run,
                    repeat(scenario),
                    repeat(selected),
                    runs,
                    repeat(output_dir),
                )
            )
    else:
        outcomes = [execute_run(scenario, selected, run, output_dir) for run in runs]

    return summarise(scenario, selected, outcomes)


def track_bundle(
    scenario: Scenario,
    bundle: ScenarioBundle,
    methods: list[str] | None = None,
    output_dir: Path | None = None,
) -> tuple[RunReport, list[MethodOutcome]]:
    """Run the selected methods on an existing bundle as Monte Carlo run 0."""
    selected = scenario.select_methods(methods)
    run_logger = RunLogger(scenario.name, 0, output_dir) if output_dir else None
    prior = track_prior(scenario, bundle.truth.initial, 0)
    params = GospaParams.from_settings()
    outcomes = [
        run_method(m, scenario, bundle, prior, 0, params, run_logger, record_convergence=True)
        for m in selected
    ]
    if run_logger:
        run_logger.save(
            success=all(o.failure is None for o in outcomes),
            failures=sum(o.failure is not None for o in outcomes),
        )
    report = summarise(scenario, selected, [RunOutcome(run=0, methods=outcomes)])
    return report, outcomes
