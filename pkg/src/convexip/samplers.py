"""Seeded random inputs for property tests, probes and the CLI axiom suite.

Every generator takes a ``numpy.random.Generator`` so call sites control
determinism; nothing here touches global random state.
"""

from __future__ import annotations

import numpy as np

from .body import Body, ball, minkowski_sum, point, polytope_from_points
from .newick import Phylogeny, phylogeny

__all__ = [
    "random_polygon", "random_body", "random_interval", "random_point_set",
    "random_binary_tree",
]


def random_polygon(rng: np.random.Generator, max_vertices: int = 9,
                   spread: float = 1.0) -> Body:
    """Convex hull of a few Gaussian points; may degenerate to a segment."""
    k = int(rng.integers(3, max_vertices + 1))
    return polytope_from_points(rng.normal(0.0, spread, size=(k, 2)))


def random_body(rng: np.random.Generator) -> Body:
    """Polygon, ball, point, or polygon-plus-ball, uniformly at random."""
    roll = int(rng.integers(0, 4))
    if roll == 0:
        return random_polygon(rng)
    if roll == 1:
        return ball(rng.normal(0.0, 1.0, size=2), float(rng.uniform(0.1, 1.5)))
    if roll == 2:
        return point(rng.normal(0.0, 1.0, size=2))
    smooth = ball(np.zeros(2), float(rng.uniform(0.1, 0.8)))
    return minkowski_sum(random_polygon(rng), smooth)


def random_interval(rng: np.random.Generator) -> tuple:
    a, b = np.sort(rng.normal(0.0, 1.0, size=2))
    return (float(a), float(b))


def random_point_set(rng: np.random.Generator, dim: int = 2,
                     max_points: int = 6) -> np.ndarray:
    m = int(rng.integers(1, max_points + 1))
    return rng.normal(0.0, 1.0, size=(m, dim))


def random_binary_tree(rng: np.random.Generator, n_leaves: int) -> Phylogeny:
    """Uniform-attachment binary topology with leaves ``L01, L02, ...``."""
    if n_leaves < 2:
        raise ValueError("a phylogeny needs at least 2 leaves")
    width = max(2, len(str(n_leaves)))
    names = [f"L{i:0{width}d}" for i in range(1, n_leaves + 1)]
    if n_leaves == 2:
        return phylogeny([(names[0], names[1])])
    edges = [(names[0], "I1"), (names[1], "I1"), (names[2], "I1")]
    next_internal = 2
    for leaf in names[3:]:
        u, v = edges.pop(int(rng.integers(0, len(edges))))
        mid = f"I{next_internal}"
        next_internal += 1
        edges.extend([(u, mid), (mid, v), (mid, leaf)])
    return phylogeny(edges)
