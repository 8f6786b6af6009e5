"""End-to-end axial symmetry test with bootstrap calibration.

Pipeline: draw one projection direction h and keep it fixed; split the
sample once; estimate candidate axes from the third group's covariance
eigenvectors; for each candidate compute the split KS statistic and
calibrate it with the symmetrized smoothed bootstrap; combine the
per-candidate p-values by their maximum (valid without multiplicity
correction: the null is a union over candidates).
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bootstrap import (
    KernelSpec,
    bootstrap_pvalue,
    bootstrap_replicate,
    default_bandwidth,
    default_bandwidth_scale,
    symmetrize,
)
from .empirical import candidate_statistic, split_three
from .geometry import UnitDirection, sample_unit_direction
from .rng import derive_rng
from .spectral import as_sample, check_simple_spectrum, eigendecompose, mean_and_covariance

__all__ = [
    "TestConfig",
    "CandidateResult",
    "TestReport",
    "run_axial_symmetry_test",
    "global_pvalue",
    "REPORT_FORMAT_VERSION",
]

REPORT_FORMAT_VERSION = "axisym-report-1"

# Sub-stream keys under the master seed.
_KEY_H = 0
_KEY_SPLIT = 1
_KEY_BOOT = 2


@dataclass(frozen=True)
class TestConfig:
    """All tuning choices for one test run."""

    alpha: float = 0.05
    bootstrap: int = 500
    seed: int = 0
    h: tuple | None = None  # explicit projection direction; None = random
    bandwidth: float | None = None  # None = data-scaled default rule
    kernel: str = "gaussian"
    h1_rel_tol: float = 1e-6
    threads: int = 0  # 0 = auto; affects scheduling only, never results

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must be in (0, 1)")
        if self.bootstrap < 1:
            raise ValueError("bootstrap replicate count must be >= 1")
        if self.bandwidth is not None and self.bandwidth < 0:
            raise ValueError("bandwidth must be >= 0")
        if self.threads < 0:
            raise ValueError("threads must be >= 0")
        KernelSpec(kind=self.kernel, bandwidth=1.0)  # validate the kind


@dataclass(frozen=True)
class CandidateResult:
    """Per-candidate axis, statistic, and bootstrap p-value."""

    index: int  # 1-based, by decreasing eigenvalue
    direction: np.ndarray
    eigenvalue: float
    T: float
    p: float
    bootstrap: int
    bandwidth: float
    replicates: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "direction": [float(x) for x in self.direction],
            "eigenvalue": self.eigenvalue,
            "T": self.T,
            "p": self.p,
            "bootstrap": self.bootstrap,
            "bandwidth": self.bandwidth,
            "replicates": [float(x) for x in self.replicates],
        }


@dataclass(frozen=True)
class TestReport:
    """Full outcome of one test run, with reproduction provenance."""

    candidates: list
    global_p: float
    reject: bool
    h: np.ndarray
    n: int
    d: int
    config: TestConfig
    simple_spectrum: dict
    elapsed_seconds: float

    def to_dict(self, include_timing: bool = False) -> dict:
        """JSON-ready dict.  Timing is excluded by default so that equal
        (config, seed) runs serialize to identical bytes."""
        cfg = {
            "alpha": self.config.alpha,
            "bootstrap": self.config.bootstrap,
            "seed": self.config.seed,
            "h": list(self.config.h) if self.config.h is not None else None,
            "bandwidth": self.config.bandwidth,
            "kernel": self.config.kernel,
            "h1_rel_tol": self.config.h1_rel_tol,
        }
        out = {
            "format_version": REPORT_FORMAT_VERSION,
            "n": self.n,
            "d": self.d,
            "config": cfg,
            "h": [float(x) for x in self.h],
            "simple_spectrum": self.simple_spectrum,
            "candidates": [c.to_dict() for c in self.candidates],
            "global_p": self.global_p,
            "reject": self.reject,
        }
        if include_timing:
            out["elapsed_seconds"] = self.elapsed_seconds
        return out


def global_pvalue(pvalues) -> float:
    """Maximum of the per-candidate p-values."""
    p = np.asarray(pvalues, dtype=float)
    if p.size == 0:
        raise ValueError("empty p-value vector")
    return float(p.max())


def _map_indices(fn, count: int, threads: int) -> list:
    """Apply fn to range(count), preserving index order.

    Results are identical for any thread count: every index owns its own
    derived random stream.
    """
    if threads == 1 or count <= 1:
        return [fn(b) for b in range(count)]
    workers = threads if threads > 0 else (os.cpu_count() or 1)
    if workers <= 1:
        return [fn(b) for b in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


def run_axial_symmetry_test(sample, config: TestConfig) -> TestReport:
    """Run the full test: statistics, bootstrap calibration, decision.

    Fully deterministic given ``config.seed``; the projection direction,
    the split, and every bootstrap replicate draw from independent
    derived streams.
    """
    start = time.perf_counter()
    arr = as_sample(sample)
    n, d = arr.shape
    if n < max(9, 3 * (d + 1)):
        raise ValueError(f"sample too small: n={n}, need >= {max(9, 3 * (d + 1))} for d={d}")

    if config.h is not None:
        h = UnitDirection(np.asarray(config.h, dtype=float))
        if h.dim != d:
            raise ValueError("explicit h has wrong dimension")
    else:
        h = sample_unit_direction(d, derive_rng(config.seed, _KEY_H))

    split = split_three(n, derive_rng(config.seed, _KEY_SPLIT))

    _, cov3 = mean_and_covariance(arr[split.part3])
    if float(np.trace(cov3)) <= 0.0:
        raise ValueError("degenerate data: third-group covariance is zero")
    decomp3 = eigendecompose(cov3)
    diag = check_simple_spectrum(decomp3, config.h1_rel_tol)

    rest = arr[np.concatenate([split.part1, split.part2])]
    candidates = []
    for i in range(1, d + 1):
        cs = candidate_statistic(arr, split, h, i)
        sym = symmetrize(rest, cs.u_hat)
        if config.bandwidth is not None:
            bw = float(config.bandwidth)
        else:
            bw = default_bandwidth(n, d, default_bandwidth_scale(sym.atoms))
        kernel = KernelSpec(kind=config.kernel, bandwidth=bw)

        def one_replicate(b: int, _sym=sym, _kernel=kernel, _i=i) -> float:
            return bootstrap_replicate(
                _sym, _kernel, n, _i, h, derive_rng(config.seed, _KEY_BOOT, _i, b)
            )

        reps = np.asarray(
            _map_indices(one_replicate, config.bootstrap, config.threads), dtype=float
        )
        p = bootstrap_pvalue(cs.T, reps)
        candidates.append(
            CandidateResult(
                index=i,
                direction=cs.u_hat.coords,
                eigenvalue=cs.eigenvalue,
                T=cs.T,
                p=p,
                bootstrap=config.bootstrap,
                bandwidth=bw,
                replicates=reps,
            )
        )

    gp = global_pvalue([c.p for c in candidates])
    return TestReport(
        candidates=candidates,
        global_p=gp,
        reject=bool(gp <= config.alpha),
        h=h.coords,
        n=n,
        d=d,
        config=config,
        simple_spectrum=diag,
        elapsed_seconds=time.perf_counter() - start,
    )
