"""Deterministic direction grids for quadrature.

The circle grid is midpoint-spaced so axis-aligned support kinks never
sit on a node.  Higher-dimensional grids map a fixed-seed scrambled
Sobol sequence through the normal quantile and normalise, giving a
reproducible low-discrepancy set on the sphere.

Weights are uniform and sum to the space dimension: with that
normalisation the quadrature form reproduces the Euclidean dot product
on singletons (exactly on the circle, to grid accuracy elsewhere).
"""

from functools import lru_cache

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

DEFAULT_GRID = 4096
_SPHERE_SEED = 20260822

__all__ = ["DEFAULT_GRID", "circle_angles", "grid_directions", "grid_weights"]


@lru_cache(maxsize=None)
def circle_angles(count: int = DEFAULT_GRID) -> np.ndarray:
    if count < 8:
        raise ValueError("circle grid needs at least 8 directions")
    t = (np.arange(count) + 0.5) * (2.0 * np.pi / count)
    t.setflags(write=False)
    return t


@lru_cache(maxsize=None)
def grid_directions(dim: int, count: int = DEFAULT_GRID) -> np.ndarray:
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    if dim == 1:
        dirs = np.array([[1.0], [-1.0]])
    elif dim == 2:
        t = circle_angles(count)
        dirs = np.stack((np.cos(t), np.sin(t)), axis=1)
    else:
        if count < 8:
            raise ValueError("sphere grid needs at least 8 directions")
        sob = qmc.Sobol(d=dim, scramble=True, seed=_SPHERE_SEED)
        u = sob.random(count)
        g = ndtri(np.clip(u, 1e-12, 1.0 - 1e-12))
        norms = np.linalg.norm(g, axis=1)
        norms[norms == 0.0] = 1.0
        dirs = g / norms[:, np.newaxis]
    dirs = np.ascontiguousarray(dirs)
    dirs.setflags(write=False)
    return dirs


@lru_cache(maxsize=None)
def grid_weights(dim: int, count: int = DEFAULT_GRID) -> np.ndarray:
    n = 2 if dim == 1 else count
    w = np.full(n, dim / n)
    w.setflags(write=False)
    return w
