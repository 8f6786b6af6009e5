"""Monte Carlo level/power studies: generate, test, tally.

Each repetition draws fresh data and runs the full test with its own
derived seeds, so results are reproducible, independent of the parallel
schedule, and prefix-stable when the repetition count grows.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .datagen import GeneratorSpec, gen
from .rng import derive_rng, derive_seed
from .testkit import TestConfig, run_axial_symmetry_test

__all__ = ["StudySpec", "StudyResult", "run_study", "wilson_interval"]

# Sub-stream keys under the study master seed.
_KEY_DATA = 0
_KEY_TEST = 1


@dataclass(frozen=True)
class StudySpec:
    """One Monte Carlo study: a data source, a test config, R repetitions."""

    generator: GeneratorSpec
    config: TestConfig
    repetitions: int
    master_seed: int = 0

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass(frozen=True)
class StudyResult:
    """Tallied rejection rates with Wilson 95% uncertainty."""

    rejection_rate: float
    wilson_low: float
    wilson_high: float
    per_candidate_rates: list
    rejections: int
    repetitions: int
    outcomes: list  # per-repetition global reject flags, in order
    mean_runtime_seconds: float

    def to_dict(self) -> dict:
        return {
            "rejection_rate": self.rejection_rate,
            "wilson_low": self.wilson_low,
            "wilson_high": self.wilson_high,
            "per_candidate_rates": self.per_candidate_rates,
            "rejections": self.rejections,
            "repetitions": self.repetitions,
            "outcomes": [bool(o) for o in self.outcomes],
            "mean_runtime_seconds": self.mean_runtime_seconds,
        }


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * np.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _run_one(spec: StudySpec, rep: int) -> tuple[bool, list, float]:
    data_rng = derive_rng(spec.master_seed, _KEY_DATA, rep)
    data = gen(spec.generator, data_rng)
    cfg = replace(spec.config, seed=derive_seed(spec.master_seed, _KEY_TEST, rep))
    t0 = time.perf_counter()
    report = run_axial_symmetry_test(data, cfg)
    elapsed = time.perf_counter() - t0
    per_cand = [c.p <= cfg.alpha for c in report.candidates]
    return report.reject, per_cand, elapsed


def run_study(spec: StudySpec, threads: int = 0) -> StudyResult:
    """Run all repetitions and tally global and per-candidate rejections.

    ``threads`` > 1 distributes repetitions over processes; tallies are
    identical for any setting because each repetition owns its seeds.
    """
    reps = spec.repetitions
    if threads > 1 and reps > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_one, [spec] * reps, range(reps), chunksize=max(1, reps // (4 * threads))))
    else:
        results = [_run_one(spec, r) for r in range(reps)]

    outcomes = [r[0] for r in results]
    rejections = sum(outcomes)
    d = len(results[0][1])
    per_candidate = [sum(r[1][j] for r in results) / reps for j in range(d)]
    low, high = wilson_interval(rejections, reps)
    return StudyResult(
        rejection_rate=rejections / reps,
        wilson_low=low,
        wilson_high=high,
        per_candidate_rates=per_candidate,
        rejections=rejections,
        repetitions=reps,
        outcomes=outcomes,
        mean_runtime_seconds=float(np.mean([r[2] for r in results])),
    )
