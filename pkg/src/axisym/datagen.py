"""Seeded synthetic generators for null and alternative distributions.

Null kinds (axially symmetric about some direction): gaussian,
rotated_gaussian, polygon_uniform, mirrored_mixture.  Alternative kind:
skew_product, which is asymmetric about every direction so the global
max-p test has power.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import UnitDirection, reflect

__all__ = ["GeneratorSpec", "gen", "KINDS"]

KINDS = ("gaussian", "rotated_gaussian", "skew_product", "polygon_uniform", "mirrored_mixture")


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of one synthetic data source."""

    kind: str
    n: int
    seed: int | None = None
    mean: tuple = ()  # defaults to zeros
    variances: tuple = (4.0, 1.0)  # strictly decreasing diagonal
    angle: float = 0.0  # rotation (radians), rotated_gaussian only
    k: int = 3  # vertex count, polygon_uniform only
    skew: float = 2.0  # scale contrast, skew_product only
    axis: tuple = (1.0, 0.0)  # mirror axis, mirrored_mixture only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind: {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.kind in ("gaussian", "rotated_gaussian"):
            v = np.asarray(self.variances, dtype=float)
            if v.size < 2 or np.any(v <= 0) or np.any(np.diff(v) >= 0):
                raise ValueError("variances must be strictly decreasing positives, length >= 2")
        if self.kind == "polygon_uniform" and self.k < 3:
            raise ValueError("polygon needs k >= 3 vertices")
        if self.kind == "skew_product" and self.skew == 1.0:
            raise ValueError("skew_product needs skew != 1 to be an alternative")
        if self.kind == "mirrored_mixture" and self.n % 2 != 0:
            raise ValueError("mirrored_mixture needs even n")


def _rotation2(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def gen(spec: GeneratorSpec, rng: np.random.Generator | None = None) -> np.ndarray:
    """Draw an (n, d) sample per the spec; deterministic given the seed."""
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    n = spec.n

    if spec.kind in ("gaussian", "rotated_gaussian"):
        v = np.asarray(spec.variances, dtype=float)
        d = v.size
        mean = np.asarray(spec.mean, dtype=float) if len(spec.mean) else np.zeros(d)
        if mean.size != d:
            raise ValueError("mean length must match variances length")
        x = rng.standard_normal((n, d)) * np.sqrt(v)
        if spec.kind == "rotated_gaussian":
            if d != 2:
                raise ValueError("rotated_gaussian is 2-d")
            x = x @ _rotation2(spec.angle).T
        return x + mean

    if spec.kind == "skew_product":
        e = rng.exponential(size=(n, 2))
        return np.column_stack([e[:, 0] - 1.0, spec.skew * (e[:, 1] - 1.0)])

    if spec.kind == "polygon_uniform":
        # Perimeter-uniform on the boundary of a regular k-gon of
        # circumradius 1 centered at the origin (edges all equal length,
        # so a uniform edge choice plus a uniform position is uniform on
        # the perimeter).
        k = spec.k
        verts = np.column_stack(
            [np.cos(2 * np.pi * np.arange(k) / k), np.sin(2 * np.pi * np.arange(k) / k)]
        )
        edge = rng.integers(0, k, size=n)
        t = rng.random(n)[:, None]
        a = verts[edge]
        b = verts[(edge + 1) % k]
        return a + t * (b - a)

    if spec.kind == "mirrored_mixture":
        # Asymmetric exponential-product cloud united with its exact
        # mirror about the axis through the origin: null by construction.
        axis = UnitDirection(np.asarray(spec.axis, dtype=float))
        half = n // 2
        e = rng.exponential(size=(half, axis.dim))
        scales = 1.0 + 0.5 * np.arange(axis.dim)
        cloud = (e - 1.0) * scales + 0.25
        return np.vstack([cloud, reflect(axis, cloud)])

    raise AssertionError("unreachable")
