"""Hierarchical random streams: master seed → stream → run → step → sensor."""

from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    """Independent top-level streams, one per kind of random draw."""

    TRUTH = 0
    SCANS = 1
    NETWORK = 2
    OBJECTS = 3
    SENSORS = 4
    TRACK_INIT = 5


def stream_rng(seed: int, stream: Stream, *key: int) -> np.random.Generator:
    """
    Generator for one leaf of the stream tree.

    The spawn key fixes the position in the tree, so adding sensors, steps or
    runs never perturbs the draws of the others.

    Args:
        seed: Master seed
        stream: Top-level stream
        *key: Run, step, sensor (or iteration) indices, outermost first

    Returns:
        A fresh numpy Generator
    """
    sequence = np.random.SeedSequence(seed, spawn_key=(int(stream), *map(int, key)))
    return np.random.default_rng(sequence)
