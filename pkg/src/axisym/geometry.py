"""Geometric primitives: axis reflections, sphere sampling, projections.

The reflection about the axis spanned by a unit vector u is the linear
map 2*u*u^T - I: it fixes span(u) and negates the orthogonal complement.
All operations here are pure functions on immutable inputs.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "UnitDirection",
    "reflect",
    "reflect_affine",
    "sample_unit_direction",
    "project",
]

# Directions with smaller norm are rejected as degenerate.
MIN_DIRECTION_NORM = 1e-8


class UnitDirection:
    """A unit-norm direction in R^d (d >= 2), identified up to sign.

    The constructor renormalizes its input; inputs with norm below
    ``MIN_DIRECTION_NORM`` are rejected.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        v = np.ascontiguousarray(coords, dtype=float)
        if v.ndim != 1:
            raise ValueError("direction must be a 1-d vector")
        if v.size < 2:
            raise ValueError("direction dimension must be >= 2")
        norm = float(np.linalg.norm(v))
        if not np.isfinite(norm) or norm < MIN_DIRECTION_NORM:
            raise ValueError(
                f"degenerate direction: norm {norm:g} < {MIN_DIRECTION_NORM:g}"
            )
        v = v / norm
        v.flags.writeable = False
        self.coords = v

    @property
    def dim(self) -> int:
        return self.coords.size

    def __neg__(self) -> "UnitDirection":
        return UnitDirection(-self.coords)

    def __repr__(self) -> str:
        return f"UnitDirection({self.coords.tolist()!r})"


def reflect(u: UnitDirection, x) -> np.ndarray:
    """Reflect point(s) ``x`` about the axis span(u).

    ``x`` may be a single d-vector or an (n, d) array of rows.  Computed
    as 2<u,x>u - x, never materializing the d x d reflection matrix.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != u.dim:
        raise ValueError(f"dimension mismatch: direction is {u.dim}-d, point is {x.shape[-1]}-d")
    proj = x @ u.coords
    return 2.0 * np.multiply.outer(proj, u.coords) - x


def reflect_affine(u: UnitDirection, center, x) -> np.ndarray:
    """Reflect ``x`` about the axis through ``center`` with direction ``u``."""
    center = np.asarray(center, dtype=float)
    if center.shape != (u.dim,):
        raise ValueError("center dimension mismatch")
    return center + reflect(u, np.asarray(x, dtype=float) - center)


def sample_unit_direction(d: int, rng: np.random.Generator) -> UnitDirection:
    """Draw a uniformly distributed direction on the unit sphere in R^d.

    A standard-normal vector is normalized; the measure-zero event of a
    numerically vanishing norm triggers a redraw.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    while True:
        v = rng.standard_normal(d)
        if np.linalg.norm(v) >= 1e-300:
            return UnitDirection(v)


def project(sample, h: UnitDirection) -> np.ndarray:
    """Inner products <x_j, h> for each row x_j of ``sample``.

    No centering is applied here; callers center their subsamples first.
    """
    sample = np.asarray(sample, dtype=float)
    if sample.ndim != 2 or sample.shape[1] != h.dim:
        raise ValueError("sample/direction dimension mismatch")
    return sample @ h.coords
