"""Per-sensor NHPP measurement scans."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from src.model.sensor import Region, SensorModel, association_prior
from src.sim.streams import Stream, stream_rng


@dataclass(frozen=True)
class Scan:
    """One sensor's measurement batch at one time step.

    truth_origins is simulation-only; trackers receive scans through
    `strip_truth`, which drops it.
    """

    sensor_id: int
    time_step: int
    measurements: np.ndarray
    truth_origins: np.ndarray | None = None

    def __post_init__(self) -> None:
        measurements = np.asarray(self.measurements, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "measurements", measurements)
        if self.truth_origins is not None:
            origins = np.asarray(self.truth_origins, dtype=int)
            if origins.shape != (measurements.shape[0],):
                raise ValueError(
                    f"{origins.shape[0]} origins for {measurements.shape[0]} measurements"
                )
            object.__setattr__(self, "truth_origins", origins)

    @property
    def num_measurements(self) -> int:
        return self.measurements.shape[0]


def strip_truth(scan: Scan) -> Scan:
    """Tracker-facing projection of a scan without its latent origins."""
    return dataclasses.replace(scan, truth_origins=None)


def simulate_scan(
    truth_step: np.ndarray,
    sensors: list[SensorModel],
    region: Region,
    rng_seed: int,
    run: int = 0,
    time_step: int = 1,
) -> list[Scan]:
    """
    Draw one scan per sensor from the NHPP measurement model.

    M ~ Poisson(Σ_k Λ_k); each origin is drawn from the association prior;
    object measurements are N(Hx_k, R_k) and clutter is uniform over the region.

    Args:
        truth_step: Object states at this step, shape (K, 4)
        sensors: One model per sensor
        region: Clutter region
        rng_seed: Master seed
        run: Monte Carlo run index
        time_step: 1-indexed time step

    Returns:
        One Scan per sensor, in sensor order
    """
    scans = []
    for s, sensor in enumerate(sensors):
        rng = stream_rng(rng_seed, Stream.SCANS, run, time_step, s)
        total_rate = float(np.sum(sensor.rates))
        count = int(rng.poisson(total_rate)) if total_rate > 0 else 0
        if count == 0:
            scans.append(Scan(s, time_step, np.zeros((0, 2)), np.zeros(0, dtype=int)))
            continue

        origins = rng.choice(sensor.rates.size, size=count, p=association_prior(sensor))
        measurements = np.empty((count, 2))

        clutter = origins == 0
        n_clutter = int(clutter.sum())
        measurements[clutter, 0] = rng.uniform(region.x_min, region.x_max, n_clutter)
        measurements[clutter, 1] = rng.uniform(region.y_min, region.y_max, n_clutter)

        for j in np.flatnonzero(~clutter):
            k = origins[j] - 1
            measurements[j] = rng.multivariate_normal(
                sensor.H @ truth_step[k], sensor.R[k]
            )
        scans.append(Scan(s, time_step, measurements, origins))
    return scans
