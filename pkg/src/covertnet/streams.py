"""Deterministic random-stream derivation and worker-count-free parallelism.

Every Monte Carlo trial draws from a stream derived solely from (seed,
stream id), and aggregation happens in index order, so results are
byte-identical regardless of how many workers execute the trials.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np


def derive_stream(seed: int, stream_id) -> np.random.Generator:
    """Statistically independent generator keyed by (seed, stream_id).

    stream_id may be an int or a tuple of ints (nested experiment indices).
    Identical (seed, stream_id) always reproduces the same stream.
    """
    if isinstance(stream_id, (int, np.integer)):
        key = (int(stream_id),)
    else:
        key = tuple(int(i) for i in stream_id)
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=key)
    return np.random.default_rng(ss)


def run_indexed(fn: Callable[[int], object], count: int, workers: int = 1) -> list:
    """Evaluate fn(0..count-1), returning results in index order.

    With workers > 1 the calls run on a thread pool; fn must derive all of
    its randomness from its index for the output to be scheduling-free.
    """
    if workers <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=int(workers)) as pool:
        return list(pool.map(fn, range(count)))
