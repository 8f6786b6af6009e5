"""Split-sample projected Kolmogorov-Smirnov machinery.

The sample is split into three nearly balanced groups: the third group
estimates candidate axes from its covariance eigenvectors, the first two
feed a two-sample KS comparison between the projected first group and
the projected, axis-reflected second group.  Each group is centered at
its own mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import UnitDirection, reflect
from .spectral import as_sample, eigendecompose, mean_and_covariance

__all__ = [
    "SplitIndices",
    "split_three",
    "ks_sup",
    "g_hat",
    "CandidateStatistic",
    "candidate_statistic",
]


@dataclass(frozen=True)
class SplitIndices:
    """Disjoint index sets partitioning range(n) into sizes (m, m, n - 2m)."""

    part1: np.ndarray
    part2: np.ndarray
    part3: np.ndarray

    @property
    def n(self) -> int:
        return self.part1.size + self.part2.size + self.part3.size


def split_three(n: int, rng: np.random.Generator) -> SplitIndices:
    """Uniformly random three-way split with m = floor(n/3).

    Sizes are (m, m, n - 2m); deterministic given the generator state.
    """
    if n < 9:
        raise ValueError(f"sample too small to split: n={n} < 9")
    perm = rng.permutation(n)
    m = n // 3
    return SplitIndices(
        part1=np.sort(perm[:m]),
        part2=np.sort(perm[m : 2 * m]),
        part3=np.sort(perm[2 * m :]),
    )


def ks_sup(a, b) -> float:
    """Exact sup-norm distance between the ECDFs of two 1-d samples.

    Both ECDFs are right-continuous; evaluating them at every observed
    value (after all coincident values are processed, which side='right'
    search guarantees) attains the supremum exactly.
    """
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("ks_sup requires nonempty samples")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.abs(fa - fb).max())


def g_hat(part1, part2, h: UnitDirection, u: UnitDirection) -> float:
    """Sup distance between self-centered projections of the two groups.

    Group 1 is projected onto h after centering at its own mean; group 2
    is centered at its own mean, reflected about the axis u, and then
    projected onto h.
    """
    p1 = as_sample(part1)
    p2 = as_sample(part2)
    if p1.shape[1] != p2.shape[1] or p1.shape[1] != h.dim or h.dim != u.dim:
        raise ValueError("dimension mismatch between parts and directions")
    a = (p1 - p1.mean(axis=0)) @ h.coords
    b = reflect(u, p2 - p2.mean(axis=0)) @ h.coords
    return ks_sup(a, b)


@dataclass(frozen=True)
class CandidateStatistic:
    """Statistic for one candidate axis, with the axis and its eigenvalue."""

    T: float
    u_hat: UnitDirection
    eigenvalue: float


def candidate_statistic(sample, split: SplitIndices, h: UnitDirection, i: int) -> CandidateStatistic:
    """sqrt(n) times the split KS distance for the i-th candidate axis.

    The axis is the i-th covariance eigenvector (1-based, decreasing
    eigenvalues) computed from the third group only; n is the full
    sample size.
    """
    arr = as_sample(sample)
    n, d = arr.shape
    if split.part3.size < d + 1:
        raise ValueError(f"third group too small: {split.part3.size} rows for d={d}")
    _, cov = mean_and_covariance(arr[split.part3])
    decomp = eigendecompose(cov)
    u_hat = UnitDirection(decomp.vector(i))
    g = g_hat(arr[split.part1], arr[split.part2], h, u_hat)
    return CandidateStatistic(
        T=float(np.sqrt(n) * g),
        u_hat=u_hat,
        eigenvalue=float(decomp.eigenvalues[i - 1]),
    )
