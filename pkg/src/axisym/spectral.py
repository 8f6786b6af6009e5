"""Mean/covariance estimation and symmetric eigendecomposition.

The covariance uses divisor n (not n-1).  Eigenpairs come from a cyclic
Jacobi solver: dimensions here are small (typically 2-10), where Jacobi
is simple and extremely robust.  Eigenvectors are sign-canonicalized so
that the coordinate of largest magnitude is positive, which stabilizes
reporting; every downstream statistic depends on the axis only through
u*u^T and is therefore sign-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Sample",
    "as_sample",
    "SpectralDecomposition",
    "mean_and_covariance",
    "eigendecompose",
    "check_simple_spectrum",
    "canonicalize_sign",
]

# Samples are plain (n, d) float arrays; `as_sample` enforces the invariants.
Sample = np.ndarray

_MAX_JACOBI_SWEEPS = 100


def as_sample(data) -> np.ndarray:
    """Validate and return data as an (n, d) float array with d >= 2."""
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2:
        raise ValueError("sample must be a 2-d array of shape (n, d)")
    n, d = arr.shape
    if n < 1 or d < 2:
        raise ValueError(f"sample must have n >= 1 rows and d >= 2 columns, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sample contains non-finite entries")
    return arr


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a covariance matrix, sorted by decreasing eigenvalue.

    ``eigenvectors`` holds unit eigenvectors as columns, orthonormal and
    sign-canonicalized.  ``min_relative_gap`` is the smallest eigenvalue
    spacing relative to the largest eigenvalue.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    min_relative_gap: float

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    def vector(self, i: int) -> np.ndarray:
        """The i-th eigenvector (1-based, by decreasing eigenvalue)."""
        if not 1 <= i <= self.dim:
            raise ValueError(f"candidate index {i} out of range 1..{self.dim}")
        return self.eigenvectors[:, i - 1]


def mean_and_covariance(sample) -> tuple[np.ndarray, np.ndarray]:
    """Sample mean and covariance with divisor n.

    The accumulated matrix is symmetrized to remove round-off asymmetry.
    """
    arr = as_sample(sample)
    n = arr.shape[0]
    if n < 2:
        raise ValueError("insufficient data: need at least 2 rows for a covariance")
    mean = arr.mean(axis=0)
    centered = arr - mean
    cov = (centered.T @ centered) / n
    cov = 0.5 * (cov + cov.T)
    return mean, cov


def canonicalize_sign(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude coordinate is positive.

    Ties in magnitude resolve to the lowest index.  Idempotent, and maps
    v and -v to the same output.
    """
    out = vectors.copy()
    for j in range(out.shape[1]):
        k = int(np.argmax(np.abs(out[:, j])))
        if out[k, j] < 0:
            out[:, j] = -out[:, j]
    return out


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Returns (eigenvalues, eigenvector columns), unordered.  Raises if the
    off-diagonal mass has not vanished after ``_MAX_JACOBI_SWEEPS`` sweeps.
    """
    a = a.copy()
    d = a.shape[0]
    v = np.eye(d)
    scale = max(float(np.abs(a).max()), np.finfo(float).tiny)
    tol = 1e-15 * scale
    for _ in range(_MAX_JACOBI_SWEEPS):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                off = max(off, abs(apq))
                if abs(apq) <= tol:
                    continue
                # Standard stable rotation choice (Golub & Van Loan).
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        if off <= tol:
            return np.diag(a).copy(), v
    raise RuntimeError(f"Jacobi eigensolver did not converge in {_MAX_JACOBI_SWEEPS} sweeps")


def eigendecompose(cov) -> SpectralDecomposition:
    """Full eigendecomposition of a symmetric covariance matrix.

    Eigenpairs are sorted by decreasing eigenvalue and the eigenvectors
    sign-canonicalized.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ValueError("covariance must be a square matrix")
    scale = max(float(np.abs(cov).max()), np.finfo(float).tiny)
    if np.abs(cov - cov.T).max() > 1e-8 * scale:
        raise ValueError("covariance matrix is not symmetric")
    cov = 0.5 * (cov + cov.T)
    values, vectors = _jacobi(cov)
    order = np.argsort(values)[::-1]
    values = values[order]
    vectors = canonicalize_sign(vectors[:, order])
    gaps = -np.diff(values)
    denom = max(float(values[0]), np.finfo(float).eps)
    gap = float(gaps.min() / denom) if gaps.size else 0.0
    return SpectralDecomposition(
        eigenvalues=values, eigenvectors=vectors, min_relative_gap=max(gap, 0.0)
    )


def check_simple_spectrum(decomp: SpectralDecomposition, rel_tol: float) -> dict:
    """Diagnose whether all eigenvalues are pairwise distinct.

    Returns ``{"ok": bool, "gap": float}``; never raises.  Callers decide
    whether a tied spectrum is fatal or a warning.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    gap = decomp.min_relative_gap
    return {"ok": bool(gap >= rel_tol), "gap": float(gap)}
