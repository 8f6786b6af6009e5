"""Deterministic derivation of independent random streams.

Every stochastic component of the pipeline receives its own generator,
derived from a master seed plus a structured key.  Streams for different
keys are statistically independent and reproducible regardless of
execution order or degree of parallelism.
"""

from __future__ import annotations

import numpy as np


def derive_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for stream ``key`` under master ``seed``.

    Same (seed, key) always yields the same stream; distinct keys yield
    independent streams.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(ss)


def derive_seed(seed: int, *key: int) -> int:
    """A 64-bit sub-seed for stream ``key`` under master ``seed``."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0])
